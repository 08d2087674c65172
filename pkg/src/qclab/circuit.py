"""Gate catalogue, circuit container and the statevector kernel.

Index convention: amplitude ``b`` of an n-qubit state stores qubit ``q`` in
bit ``q`` of ``b`` (qubit 0 is least significant).  Bitstrings shown to the
user are printed with qubit ``n-1`` first, so ``"10"`` means qubit 1 is set.

A multi-qubit named gate acts on its ``targets`` list with ``targets[0]``
as the leftmost Kronecker factor, i.e. the printed matrix is read in the
order the targets are listed.  Any gate may additionally carry control
qubits; the kernel only touches the slice where every control is 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core import as_matrix, is_unitary
from .errors import (
    BadFormat,
    BadIndex,
    BadParamCount,
    DimensionMismatch,
    LengthMismatch,
    TooLarge,
    UnknownGate,
)
from .pauli import PauliTerm, _check_label

SQ2 = 1.0 / math.sqrt(2.0)
MAX_UNITARY_QUBITS = 12

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = SQ2 * np.array([[1, 1], [1, -1]], dtype=complex)
_HY = SQ2 * np.array([[1, -1j], [1j, -1]], dtype=complex)
_SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
_P0 = np.diag([1.0, 0.0]).astype(complex)
_P1 = np.diag([0.0, 1.0]).astype(complex)


def _controlled(u: np.ndarray) -> np.ndarray:
    """|0⟩⟨0| ⊗ 1 + |1⟩⟨1| ⊗ u with the control as the leftmost factor."""
    return np.kron(_P0, np.eye(u.shape[0])) + np.kron(_P1, u)


def _rot(theta: float, n1: float, n2: float, n3: float) -> np.ndarray:
    norm = math.sqrt(n1 * n1 + n2 * n2 + n3 * n3)
    if norm == 0.0:
        return _I2.copy()
    nsig = (n1 * _X + n2 * _Y + n3 * _Z) / norm
    half = 0.5 * theta * norm
    return math.cos(half) * _I2 - 1j * math.sin(half) * nsig


def _build(name: str, p: tuple[float, ...]) -> np.ndarray:
    if name == "h":
        return _H
    if name == "x":
        return _X
    if name == "y":
        return _Y
    if name == "z":
        return _Z
    if name == "s":
        return np.diag([1, 1j]).astype(complex)
    if name == "t":
        return np.diag([1, np.exp(1j * math.pi / 4)])
    if name == "p":
        return np.diag([1, np.exp(1j * p[0])])
    if name == "rx":
        return _rot(p[0], 1, 0, 0)
    if name == "ry":
        return _rot(p[0], 0, 1, 0)
    if name == "rz":
        return np.diag([np.exp(-0.5j * p[0]), np.exp(0.5j * p[0])])
    if name == "rn":
        return _rot(*p)
    if name == "hy":
        return _HY
    if name == "cnot":
        return _controlled(_X)
    if name == "cz":
        return _controlled(_Z)
    if name == "swap":
        return _SWAP
    if name == "cswap":
        return _controlled(_SWAP)
    if name == "toffoli":
        return _controlled(_controlled(_X))
    if name == "ch":
        return _controlled(_H)
    if name == "crx":
        # Printed with the control on the right-hand factor: the rotation
        # mixes |01⟩ and |11⟩.
        return np.kron(_I2, _P0) + np.kron(_rot(p[0], 1, 0, 0), _P1)
    if name == "deutsch":
        th = p[0]
        m = np.eye(8, dtype=complex)
        m[6:, 6:] = [[1j * math.cos(th), math.sin(th)], [math.sin(th), 1j * math.cos(th)]]
        return m
    if name == "barenco":
        alpha, phi, th = p
        m = np.eye(4, dtype=complex)
        m[2:, 2:] = [
            [np.exp(1j * alpha) * math.cos(th), -1j * np.exp(1j * (alpha - phi)) * math.sin(th)],
            [-1j * np.exp(1j * (alpha + phi)) * math.sin(th), np.exp(1j * alpha) * math.cos(th)],
        ]
        return m
    raise UnknownGate(name)


# name -> (number of params, number of target qubits)
GATE_ARITY: dict[str, tuple[int, int]] = {
    "h": (0, 1), "x": (0, 1), "y": (0, 1), "z": (0, 1), "s": (0, 1), "t": (0, 1),
    "p": (1, 1), "rx": (1, 1), "ry": (1, 1), "rz": (1, 1), "rn": (4, 1), "hy": (0, 1),
    "cnot": (0, 2), "cz": (0, 2), "swap": (0, 2), "ch": (0, 2), "crx": (1, 2),
    "barenco": (3, 2), "cswap": (0, 3), "toffoli": (0, 3), "deutsch": (1, 3),
}
PARAMETRIC_INVERSE = {"p", "rx", "ry", "rz", "rn", "crx"}
SELF_INVERSE = {"h", "x", "y", "z", "hy", "cnot", "cz", "swap", "ch", "cswap", "toffoli"}


@dataclass(frozen=True, eq=False)
class Gate:
    name: str
    params: tuple[float, ...]
    matrix: np.ndarray

    @property
    def n_targets(self) -> int:
        return int(self.matrix.shape[0]).bit_length() - 1

    def dagger(self) -> "Gate":
        if self.name in SELF_INVERSE:
            return self
        if self.name in PARAMETRIC_INVERSE:
            return gate_matrix(self.name, (-self.params[0],) + tuple(self.params[1:]))
        name = self.name[:-1] if self.name.endswith("†") else self.name + "†"
        return Gate(name, self.params, self.matrix.conj().T)


@lru_cache(maxsize=4096)
def _cached_gate(name: str, key: tuple[float, ...]) -> Gate:
    m = np.array(_build(name, key), dtype=complex)
    m.setflags(write=False)
    return Gate(name, key, m)


def gate_matrix(name: str, params: Sequence[float] = ()) -> Gate:
    """Look up a named gate.  Matrices are cached per name and rounded params."""
    name = name.lower()
    if name not in GATE_ARITY:
        raise UnknownGate(f"unknown gate {name!r}")
    want = GATE_ARITY[name][0]
    params = tuple(float(x) for x in params)
    if len(params) != want:
        raise BadParamCount(f"gate {name!r} takes {want} parameter(s), got {len(params)}")
    key = tuple(round(x, 12) + 0.0 for x in params)
    return _cached_gate(name, key)


def custom_gate(matrix, label: str = "u-custom") -> Gate:
    m = np.array(as_matrix(matrix), dtype=complex)
    d = m.shape[0]
    if m.shape[0] != m.shape[1] or d < 2 or d & (d - 1):
        raise DimensionMismatch(f"custom gate must be 2^k square, got {m.shape}")
    if not is_unitary(m, atol=1e-10):
        raise DimensionMismatch("custom gate matrix is not unitary")
    m.setflags(write=False)
    return Gate(label, (), m)


@dataclass(frozen=True)
class Op:
    gate: Gate
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets

    @property
    def label(self) -> str:
        g = self.gate.name
        k = len(self.controls)
        if g == "x" and k == 1:
            return "cnot"
        if g == "x" and k == 2:
            return "toffoli"
        return "c" * k + g


def _check_indices(n: int, targets: Sequence[int], controls: Sequence[int]) -> None:
    allq = list(targets) + list(controls)
    if any(not isinstance(q, (int, np.integer)) or q < 0 or q >= n for q in allq):
        raise BadIndex(f"qubit index out of range for {n} qubits: {allq}")
    if len(set(allq)) != len(allq):
        raise BadIndex(f"repeated qubit index in {allq}")


class Circuit:
    """Ordered list of gate applications on ``n_qubits`` qubits."""

    def __init__(self, n_qubits: int, ops: Iterable[Op] = ()):
        if n_qubits < 1:
            raise BadIndex("a circuit needs at least one qubit")
        self.n_qubits = int(n_qubits)
        self.ops: list[Op] = []
        for op in ops:
            self._push(op)

    def _push(self, op: Op) -> "Circuit":
        _check_indices(self.n_qubits, op.targets, op.controls)
        if len(op.targets) != op.gate.n_targets:
            raise BadIndex(f"gate {op.gate.name} acts on {op.gate.n_targets} qubit(s), got targets {op.targets}")
        self.ops.append(op)
        return self

    def append(self, name_or_gate, targets, params: Sequence[float] = (), controls: Sequence[int] = ()) -> "Circuit":
        gate = name_or_gate if isinstance(name_or_gate, Gate) else gate_matrix(name_or_gate, params)
        if isinstance(targets, (int, np.integer)):
            targets = (int(targets),)
        return self._push(Op(gate, tuple(int(q) for q in targets), tuple(int(q) for q in controls)))

    # builder shorthands -------------------------------------------------
    def h(self, q): return self.append("h", q)
    def x(self, q): return self.append("x", q)
    def y(self, q): return self.append("y", q)
    def z(self, q): return self.append("z", q)
    def s(self, q): return self.append("s", q)
    def t(self, q): return self.append("t", q)
    def hy(self, q): return self.append("hy", q)
    def p(self, phi, q): return self.append("p", q, (phi,))
    def rx(self, theta, q): return self.append("rx", q, (theta,))
    def ry(self, theta, q): return self.append("ry", q, (theta,))
    def rz(self, theta, q): return self.append("rz", q, (theta,))
    def cx(self, c, t): return self.append("x", t, controls=(c,))
    def cz(self, c, t): return self.append("z", t, controls=(c,))
    def cp(self, phi, c, t): return self.append("p", t, (phi,), controls=(c,))
    def ch(self, c, t): return self.append("h", t, controls=(c,))
    def crx(self, theta, c, t): return self.append("rx", t, (theta,), controls=(c,))
    def ccx(self, c1, c2, t): return self.append("x", t, controls=(c1, c2))
    def swap(self, a, b): return self.append("swap", (a, b))
    def cswap(self, c, a, b): return self.append("swap", (a, b), controls=(c,))

    def mcz(self, qubits: Sequence[int]):
        """Z on the last listed qubit controlled by all the others."""
        qubits = list(qubits)
        return self.append("z", qubits[-1], controls=qubits[:-1])

    def unitary(self, matrix, targets, controls: Sequence[int] = (), label: str = "u-custom"):
        return self.append(custom_gate(matrix, label), targets, controls=controls)

    cnot = cx
    toffoli = ccx

    # structure ------------------------------------------------------------
    def extend(self, other: "Circuit", qubit_map: Sequence[int] | None = None) -> "Circuit":
        if qubit_map is None:
            if other.n_qubits > self.n_qubits:
                raise BadIndex("appended circuit is wider than the target circuit")
            qubit_map = range(other.n_qubits)
        qm = list(qubit_map)
        for op in other.ops:
            self._push(Op(op.gate, tuple(qm[q] for q in op.targets), tuple(qm[q] for q in op.controls)))
        return self

    def inverse(self) -> "Circuit":
        return Circuit(self.n_qubits, (Op(op.gate.dagger(), op.targets, op.controls) for op in reversed(self.ops)))

    def copy(self) -> "Circuit":
        return Circuit(self.n_qubits, self.ops)

    def __len__(self) -> int:
        return len(self.ops)

    def gate_count(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for op in self.ops:
            counts[op.label] = counts.get(op.label, 0) + 1
        return dict(sorted(counts.items()))

    def size(self) -> int:
        return len(self.ops)

    def depth(self) -> int:
        level = [0] * self.n_qubits
        for op in self.ops:
            d = max(level[q] for q in op.qubits) + 1
            for q in op.qubits:
                level[q] = d
        return max(level, default=0)

    # serialization ----------------------------------------------------------
    def to_json_obj(self) -> dict:
        ops = []
        for op in self.ops:
            if op.gate.name not in GATE_ARITY:
                raise BadFormat(f"gate {op.gate.name!r} has no file representation")
            ops.append({
                "gate": op.gate.name,
                "params": list(op.gate.params),
                "targets": list(op.targets),
                "controls": list(op.controls),
            })
        return {"qubits": self.n_qubits, "ops": ops}

    @classmethod
    def from_json_obj(cls, obj) -> "Circuit":
        if not isinstance(obj, dict) or set(obj) != {"qubits", "ops"}:
            raise BadFormat("circuit object must have exactly the keys 'qubits' and 'ops'")
        n = obj["qubits"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise BadFormat("'qubits' must be a positive integer")
        circ = cls(n)
        allowed = {"gate", "params", "targets", "controls"}
        for i, op in enumerate(obj["ops"]):
            if not isinstance(op, dict):
                raise BadFormat(f"op {i} is not an object")
            extra = set(op) - allowed
            if extra:
                raise BadFormat(f"op {i} has unknown keys {sorted(extra)}")
            if "gate" not in op or "targets" not in op:
                raise BadFormat(f"op {i} needs 'gate' and 'targets'")
            circ.append(str(op["gate"]), list(op["targets"]), op.get("params", []), op.get("controls", []))
        return circ

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def load(cls, path: str | Path) -> "Circuit":
        with open(path) as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise BadFormat(f"invalid JSON: {exc}") from exc
        return cls.from_json_obj(obj)

    def __repr__(self) -> str:
        return f"Circuit(n_qubits={self.n_qubits}, ops={len(self.ops)})"


# ---------------------------------------------------------------------------
# kernel


def zero_state(n_qubits: int) -> np.ndarray:
    psi = np.zeros(2**n_qubits, dtype=complex)
    psi[0] = 1.0
    return psi


def n_qubits_of(state: np.ndarray) -> int:
    d = state.shape[0]
    n = d.bit_length() - 1
    if d < 2 or 2**n != d:
        raise DimensionMismatch(f"state length {d} is not a power of two")
    return n


def _apply_tensor(t: np.ndarray, u: np.ndarray, targets: Sequence[int], controls: Sequence[int], n: int) -> np.ndarray:
    """Apply ``u`` in place to the tensor ``t`` of shape ``[2]*n + batch``.

    Qubit ``q`` lives on axis ``n-1-q``.  Controls are handled by slicing the
    control=1 sub-tensor, so the ``2^n`` operator is never formed.
    """
    k = len(targets)
    ut = u.reshape([2] * (2 * k))
    if controls:
        idx: list = [slice(None)] * t.ndim
        cax = sorted(n - 1 - c for c in controls)
        for a in cax:
            idx[a] = 1
        sub = t[tuple(idx)]
        tax = [(n - 1 - q) - sum(1 for a in cax if a < n - 1 - q) for q in targets]
    else:
        sub = t
        tax = [n - 1 - q for q in targets]
    res = np.tensordot(ut, sub, axes=(list(range(k, 2 * k)), tax))
    res = np.moveaxis(res, list(range(k)), tax)
    if controls:
        t[tuple(idx)] = res
        return t
    return res


def apply(state: np.ndarray, gate: Gate, targets: Sequence[int], controls: Sequence[int] = ()) -> np.ndarray:
    """Return ``C-U |state⟩`` as a new array."""
    state = np.asarray(state, dtype=complex)
    n = n_qubits_of(state)
    if isinstance(targets, (int, np.integer)):
        targets = (int(targets),)
    _check_indices(n, targets, controls)
    if len(targets) != gate.n_targets:
        raise BadIndex(f"gate {gate.name} needs {gate.n_targets} target(s)")
    t = state.reshape([2] * n).copy()
    return _apply_tensor(t, gate.matrix, targets, controls, n).reshape(-1)


def simulate(circ: Circuit, initial: np.ndarray | None = None) -> np.ndarray:
    """Run the circuit left to right on ``initial`` (default |0…0⟩)."""
    n = circ.n_qubits
    if initial is None:
        psi = zero_state(n)
    else:
        psi = np.array(initial, dtype=complex)
        if psi.shape != (2**n,):
            raise DimensionMismatch(f"initial state has shape {psi.shape}, circuit needs {(2**n,)}")
    t = psi.reshape([2] * n)
    for op in circ.ops:
        t = _apply_tensor(t, op.gate.matrix, op.targets, op.controls, n)
    return np.ascontiguousarray(t).reshape(-1)


def circuit_unitary(circ: Circuit) -> np.ndarray:
    """Full ``2^n`` unitary, every basis column propagated at once as a batch."""
    n = circ.n_qubits
    if n > MAX_UNITARY_QUBITS:
        raise TooLarge(f"circuit_unitary supports at most {MAX_UNITARY_QUBITS} qubits")
    dim = 2**n
    t = np.eye(dim, dtype=complex).reshape([2] * n + [dim])
    for op in circ.ops:
        t = _apply_tensor(t, op.gate.matrix, op.targets, op.controls, n)
    return np.ascontiguousarray(t).reshape(dim, dim)


def controlled_matrix(gate_mat: np.ndarray, targets: Sequence[int], controls: Sequence[int], n: int) -> np.ndarray:
    """Dense ``2^n`` operator for a controlled gate (oracle for the kernel)."""
    dim = 2**n
    u = np.asarray(gate_mat, dtype=complex)
    k = len(targets)
    out = np.zeros((dim, dim), dtype=complex)
    cmask = sum(1 << c for c in controls)
    for col in range(dim):
        if col & cmask != cmask:
            out[col, col] = 1.0
            continue
        sub_in = 0
        for i, q in enumerate(targets):
            sub_in |= ((col >> q) & 1) << (k - 1 - i)
        base = col
        for q in targets:
            base &= ~(1 << q)
        for sub_out in range(2**k):
            row = base
            for i, q in enumerate(targets):
                row |= ((sub_out >> (k - 1 - i)) & 1) << q
            out[row, col] += u[sub_out, sub_in]
    return out


# ---------------------------------------------------------------------------
# measurement


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based 64-bit generator used for every sampling step."""
    return np.random.Generator(np.random.Philox(int(seed)))


def bitstring(index: int, n: int) -> str:
    return format(index, f"0{n}b")


@dataclass
class MeasurementRecord:
    counts: dict[str, int]
    shots: int
    seed: int
    qubits: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        self.counts = dict(sorted(self.counts.items()))

    def most_common(self) -> str:
        return max(self.counts.items(), key=lambda kv: (kv[1], [-ord(c) for c in kv[0]]))[0]

    def frequencies(self) -> dict[str, float]:
        return {k: v / self.shots for k, v in self.counts.items()}


def probabilities(state: np.ndarray, qubits: Sequence[int] | None = None) -> np.ndarray:
    """Exact outcome distribution over ``qubits`` (all qubits by default).

    Entry ``k`` of the result is the probability that the selected qubits
    read the integer ``k`` with ``qubits[i]`` as bit ``i``.
    """
    state = np.asarray(state)
    n = n_qubits_of(state)
    p = np.abs(state) ** 2
    if qubits is None:
        return p / p.sum()
    qubits = list(qubits)
    _check_indices(n, qubits, ())
    t = p.reshape([2] * n)
    keep_axes = [n - 1 - q for q in qubits]
    drop = tuple(a for a in range(n) if a not in keep_axes)
    marg = t.sum(axis=drop) if drop else t
    # remaining axes are in increasing axis order; reorder so qubits[-1] is first
    remaining = [a for a in range(n) if a in keep_axes]
    order = [remaining.index(n - 1 - q) for q in reversed(qubits)]
    marg = np.transpose(marg, order).reshape(-1)
    return marg / marg.sum()


def measure(state: np.ndarray, qubits: Sequence[int], shots: int, seed: int) -> MeasurementRecord:
    """Sample the selected qubits.  Strings print ``qubits[-1]`` first."""
    if shots < 1:
        raise BadIndex("shots must be >= 1")
    probs = probabilities(state, qubits)
    counts = make_rng(seed).multinomial(int(shots), probs)
    m = len(qubits)
    rec = {bitstring(i, m): int(c) for i, c in enumerate(counts) if c}
    return MeasurementRecord(rec, int(shots), int(seed), tuple(qubits))


def measure_all(state: np.ndarray, shots: int, seed: int) -> MeasurementRecord:
    n = n_qubits_of(np.asarray(state))
    return measure(state, list(range(n)), shots, seed)


# ---------------------------------------------------------------------------
# expectation values


def expectation_pauli(state: np.ndarray, term: PauliTerm | str) -> float:
    """⟨ψ|c·P|ψ⟩ by rotating into the Z basis and summing signed probabilities."""
    if isinstance(term, str):
        term = PauliTerm(1.0, term)
    state = np.asarray(state, dtype=complex)
    n = n_qubits_of(state)
    _check_label(term.label)
    if len(term.label) != n:
        raise LengthMismatch(f"label {term.label!r} has {len(term.label)} sites, state has {n} qubits")
    t = state.reshape([2] * n)
    copied = False
    zmask = 0
    for i, c in enumerate(term.label):
        if c == "I":
            continue
        q = n - 1 - i
        zmask |= 1 << q
        if c in "XY":
            if not copied:
                t = t.copy()
                copied = True
            t = _apply_tensor(t, _H if c == "X" else _HY, (q,), (), n)
    p = np.abs(t.reshape(-1)) ** 2
    signs = _parity_signs(n, zmask)
    val = complex(term.coeff) * float(np.dot(signs, p))
    return val.real if abs(val.imag) < 1e-14 else val


@lru_cache(maxsize=256)
def _parity_signs(n: int, mask: int) -> np.ndarray:
    b = np.arange(2**n) & mask
    par = np.zeros(2**n, dtype=np.int64)
    while mask:
        par ^= b & 1
        b >>= 1
        mask >>= 1
    s = 1.0 - 2.0 * par
    s.setflags(write=False)
    return s


def expectation_sum(state: np.ndarray, terms: Iterable[PauliTerm]) -> float:
    return float(sum(np.real(expectation_pauli(state, t)) for t in terms))
