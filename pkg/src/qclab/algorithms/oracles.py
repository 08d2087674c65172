"""Boolean oracles plus the Deutsch–Jozsa and Bernstein–Vazirani algorithms.

Register layout shared by both algorithms: the answer qubit ``y`` is qubit 0
and the input ``x`` occupies qubits ``1..n`` with qubit ``i+1`` holding bit
``i`` of ``x``.  Printed kets therefore read ``|x, y⟩`` left to right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..circuit import Circuit, custom_gate, probabilities, simulate
from ..errors import BadBitstring, BadOracle

ORACLE_LABEL = "oracle"


def _check_bits(s: str, n: int | None = None) -> str:
    if not isinstance(s, str) or not s or any(c not in "01" for c in s):
        raise BadBitstring(f"not a bitstring: {s!r}")
    if n is not None and len(s) != n:
        raise BadBitstring(f"{s!r} is not a {n}-bit string")
    return s


@dataclass(frozen=True)
class OracleSpec:
    """Description of ``f: {0,1}^n → {0,1}``.

    kind is one of ``constant`` (uses ``value``), ``balanced`` (uses the
    truth table ``table`` indexed by the integer value of x), ``dot-product``
    (uses ``s``) or ``marked-set`` (uses ``marked``).
    """

    kind: str
    n: int
    value: int = 0
    table: tuple[int, ...] = ()
    s: str = ""
    marked: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 1:
            raise BadOracle("oracle needs n >= 1")
        if self.kind == "constant":
            if self.value not in (0, 1):
                raise BadOracle("constant oracle value must be 0 or 1")
        elif self.kind == "balanced":
            t = tuple(int(v) for v in self.table)
            object.__setattr__(self, "table", t)
            if len(t) != 2**self.n or set(t) - {0, 1} or sum(t) != 2 ** (self.n - 1):
                raise BadOracle("balanced oracle needs a 2^n truth table with exactly half ones")
        elif self.kind == "dot-product":
            _check_bits(self.s, self.n)
        elif self.kind == "marked-set":
            if not self.marked:
                raise BadOracle("marked set is empty")
            for m in self.marked:
                _check_bits(m, self.n)
        else:
            raise BadOracle(f"unknown oracle kind {self.kind!r}")

    @classmethod
    def from_function(cls, n: int, f) -> "OracleSpec":
        """Classify a Python callable on integers as constant or balanced."""
        table = tuple(int(f(x)) & 1 for x in range(2**n))
        if len(set(table)) == 1:
            return cls("constant", n, value=table[0])
        return cls("balanced", n, table=table)

    def f(self, x: int) -> int:
        if self.kind == "constant":
            return self.value
        if self.kind == "balanced":
            return self.table[x]
        if self.kind == "dot-product":
            return bin(x & int(self.s, 2)).count("1") & 1
        return int(format(x, f"0{self.n}b") in self.marked)

    def truth_table(self) -> list[int]:
        return [self.f(x) for x in range(2**self.n)]

    def is_constant(self) -> bool:
        return len(set(self.truth_table())) == 1

    def is_balanced(self) -> bool:
        return sum(self.truth_table()) * 2 == 2**self.n

    def bit_oracle_matrix(self) -> np.ndarray:
        """Permutation ``|x, y⟩ → |x, y ⊕ f(x)⟩`` on n+1 qubits."""
        dim = 2 ** (self.n + 1)
        m = np.zeros((dim, dim), dtype=complex)
        for x in range(2**self.n):
            fx = self.f(x)
            for y in (0, 1):
                m[2 * x + (y ^ fx), 2 * x + y] = 1.0
        return m

    def phase_oracle_matrix(self) -> np.ndarray:
        """Diagonal ``(-1)^{f(x)}`` on n qubits."""
        return np.diag([(-1.0) ** self.f(x) for x in range(2**self.n)]).astype(complex)


def append_bit_oracle(circ: Circuit, oracle: OracleSpec) -> Circuit:
    """Add one oracle query acting on qubits ``n..0`` (x above y)."""
    targets = list(range(oracle.n, -1, -1))
    return circ.append(custom_gate(oracle.bit_oracle_matrix(), ORACLE_LABEL), targets)


def oracle_calls(circ: Circuit) -> int:
    return sum(1 for op in circ.ops if op.gate.name == ORACLE_LABEL)


def _query_circuit(oracle: OracleSpec) -> Circuit:
    n = oracle.n
    c = Circuit(n + 1).x(0)
    for q in range(n + 1):
        c.h(q)
    append_bit_oracle(c, oracle)
    for q in range(1, n + 1):
        c.h(q)
    return c


@dataclass
class QueryResult:
    answer: str
    measured: str
    probability: float
    oracle_calls: int
    circuit: Circuit
    state: np.ndarray


def _read_input_register(c: Circuit, n: int):
    state = simulate(c)
    probs = probabilities(state, list(range(1, n + 1)))
    k = int(np.argmax(probs))
    return state, format(k, f"0{n}b"), float(probs[k]), float(probs[0])


def deutsch_jozsa(oracle: OracleSpec) -> QueryResult:
    """One query decides constant vs balanced.

    The input register reads all zeros with probability 1 exactly when f is
    constant, and with probability 0 when f is balanced.
    """
    if oracle.kind not in ("constant", "balanced", "dot-product"):
        raise BadOracle("Deutsch–Jozsa needs a constant or balanced oracle")
    if not (oracle.is_constant() or oracle.is_balanced()):
        raise BadOracle("oracle is neither constant nor balanced")
    c = _query_circuit(oracle)
    state, measured, p, p_zero = _read_input_register(c, oracle.n)
    if abs(p_zero - 1.0) < 1e-9:
        answer = "constant"
    elif p_zero < 1e-9:
        answer = "balanced"
    else:  # unreachable for valid promises
        raise BadOracle(f"ambiguous outcome, P(0…0) = {p_zero}")
    return QueryResult(answer, measured, p, oracle_calls(c), c, state)


def bernstein_vazirani(s: str) -> QueryResult:
    """Recover the hidden string of ``f(x) = x·s mod 2`` with a single query."""
    _check_bits(s)
    oracle = OracleSpec("dot-product", len(s), s=s)
    c = _query_circuit(oracle)
    state, measured, p, _ = _read_input_register(c, oracle.n)
    return QueryResult(measured, measured, p, oracle_calls(c), c, state)


def balanced_from_strings(values: Sequence[int]) -> OracleSpec:
    """Build a balanced oracle from a truth table listed for x = 0, 1, 2, …"""
    n = len(values).bit_length() - 1
    return OracleSpec("balanced", n, table=tuple(values))
