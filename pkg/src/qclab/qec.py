"""Repetition codes, Shor's nine-qubit code and stabilizer bookkeeping.

Physical qubit ``j`` of a code is simulator qubit ``j``; the logical input
enters on qubit 0 and the encoder spreads it over the rest.  Stabilizer
labels follow the usual printed orientation (leftmost character acts on
the highest qubit), so the generator written Z₁Z₂ in one-based notation
is ``"IZZ"`` for three qubits.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .circuit import (
    Circuit,
    apply,
    custom_gate,
    expectation_pauli,
    gate_matrix,
    make_rng,
    probabilities,
    simulate,
)
from .core import kron_all
from .errors import BadFormat, BadIndex, UncorrectableSyndrome
from .pauli import PAULI, PauliTerm, pauli_matrix


@dataclass(frozen=True)
class CodeSpec:
    name: str
    n: int
    k: int = 1
    distance: int = 3


CODES = {
    "bitflip": CodeSpec("bitflip", 3, 1, 3),
    "phaseflip": CodeSpec("phaseflip", 3, 1, 3),
    "shor9": CodeSpec("shor9", 9, 1, 3),
}


def get_code(code: CodeSpec | str) -> CodeSpec:
    if isinstance(code, CodeSpec):
        return code
    try:
        return CODES[code]
    except KeyError:
        raise BadFormat(f"unknown code {code!r}; choose from {sorted(CODES)}") from None


def _label(n: int, ops: dict[int, str]) -> str:
    return "".join(ops.get(q, "I") for q in range(n - 1, -1, -1))


def stabilizers(code: CodeSpec | str) -> list[PauliTerm]:
    code = get_code(code)
    n = code.n
    if code.name == "bitflip":
        pairs, op = [(0, 1), (1, 2)], "Z"
        return [PauliTerm(1.0, _label(n, {a: op, b: op})) for a, b in pairs]
    if code.name == "phaseflip":
        pairs, op = [(0, 1), (1, 2)], "X"
        return [PauliTerm(1.0, _label(n, {a: op, b: op})) for a, b in pairs]
    gens = []
    for block in (0, 3, 6):
        gens.append(PauliTerm(1.0, _label(n, {block: "Z", block + 1: "Z"})))
        gens.append(PauliTerm(1.0, _label(n, {block + 1: "Z", block + 2: "Z"})))
    gens.append(PauliTerm(1.0, _label(n, {q: "X" for q in range(0, 6)})))
    gens.append(PauliTerm(1.0, _label(n, {q: "X" for q in range(3, 9)})))
    return gens


def encode_circuit(code: CodeSpec | str) -> Circuit:
    code = get_code(code)
    if code.name == "bitflip":
        return Circuit(3).cx(0, 1).cx(0, 2)
    if code.name == "phaseflip":
        return Circuit(3).cx(0, 1).cx(0, 2).h(0).h(1).h(2)
    c = Circuit(9).cx(0, 3).cx(0, 6)
    for b in (0, 3, 6):
        c.h(b)
    for b in (0, 3, 6):
        c.cx(b, b + 1).cx(b, b + 2)
    return c


def _embed_logical(logical, n: int) -> np.ndarray:
    v = np.asarray(logical, dtype=complex).reshape(-1)
    if v.shape != (2,):
        raise BadIndex("logical input must be a single-qubit state")
    psi = np.zeros(2**n, dtype=complex)
    psi[0], psi[1] = v
    return psi


def encode(code: CodeSpec | str, logical) -> np.ndarray:
    code = get_code(code)
    return simulate(encode_circuit(code), _embed_logical(logical, code.n))


def logical_basis(code: CodeSpec | str) -> tuple[np.ndarray, np.ndarray]:
    return encode(code, [1, 0]), encode(code, [0, 1])


def decode(code: CodeSpec | str, state: np.ndarray) -> tuple[np.ndarray, float]:
    """Undo the encoder; return the logical amplitudes and the weight left
    outside the ``ancillas = 0`` subspace (0 for a clean decode)."""
    code = get_code(code)
    out = simulate(encode_circuit(code).inverse(), state)
    logical = out[:2].copy()
    leak = float(max(0.0, 1.0 - np.vdot(logical, logical).real))
    return logical, leak


# ---------------------------------------------------------------------------
# errors


@dataclass(frozen=True, eq=False)
class ErrorEvent:
    kind: str  # "X", "Y", "Z" or "U"
    qubit: int
    matrix: np.ndarray | None = None

    def operator(self) -> np.ndarray:
        if self.kind in "XYZ" and len(self.kind) == 1:
            return PAULI[self.kind]
        if self.kind == "I":
            return PAULI["I"]
        if self.matrix is None:
            raise BadFormat("unitary error needs a matrix")
        return np.asarray(self.matrix, dtype=complex)

    def __str__(self) -> str:
        return f"{self.kind}@{self.qubit}"


def random_su2(seed: int) -> np.ndarray:
    """Haar-random SU(2) from a seeded quaternion."""
    q = make_rng(seed).normal(size=4)
    a, b, c, d = q / np.linalg.norm(q)
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]], dtype=complex)


_ERR_RE = re.compile(r"^\s*([IXYZU])@(\d+)(?::(-?\d+))?\s*$", re.IGNORECASE)


def parse_error(spec: str) -> ErrorEvent:
    """Parse ``"X@4"`` or ``"U@7:seed"``."""
    m = _ERR_RE.match(spec)
    if not m:
        raise BadFormat(f"bad error spec {spec!r}; use e.g. X@4 or U@7:123")
    kind, q, seed = m.group(1).upper(), int(m.group(2)), m.group(3)
    if kind == "U":
        return ErrorEvent("U", q, random_su2(int(seed) if seed is not None else 0))
    if seed is not None:
        raise BadFormat("only unitary errors take a seed")
    return ErrorEvent(kind, q)


def apply_error(code: CodeSpec | str, state: np.ndarray, error: ErrorEvent) -> np.ndarray:
    code = get_code(code)
    if not 0 <= error.qubit < code.n:
        raise BadIndex(f"error qubit {error.qubit} outside the {code.n}-qubit code")
    if error.kind == "I":
        return np.array(state, dtype=complex)
    return apply(state, custom_gate(error.operator(), str(error)), (error.qubit,))


def apply_pauli_label(state: np.ndarray, label: str) -> np.ndarray:
    n = len(label)
    out = np.array(state, dtype=complex)
    for i, c in enumerate(label):
        if c != "I":
            out = apply(out, gate_matrix(c.lower()), (n - 1 - i,))
    return out


# ---------------------------------------------------------------------------
# syndromes and recovery


def verify_stabilizers(generators: Sequence[PauliTerm | str], state: np.ndarray) -> list[float]:
    """⟨ψ|g|ψ⟩ for each generator; all +1 means the state is stabilized."""
    return [float(np.real(expectation_pauli(state, g))) for g in generators]


def syndrome(code: CodeSpec | str, state: np.ndarray, tol: float = 1e-9) -> tuple[int, ...]:
    """Generator eigenvalues for a state inside one syndrome sector.

    Raises ``UncorrectableSyndrome`` when some generator is not sharp
    (use :func:`syndrome_branches` for superpositions of sectors).
    """
    vals = verify_stabilizers(stabilizers(code), state)
    out = []
    for v in vals:
        if abs(v - 1) < tol:
            out.append(1)
        elif abs(v + 1) < tol:
            out.append(-1)
        else:
            raise UncorrectableSyndrome(f"state is not in a single syndrome sector (⟨g⟩ = {v:.6f})")
    return tuple(out)


def syndrome_branches(code: CodeSpec | str, state: np.ndarray, tol: float = 1e-12):
    """Projective syndrome measurement outcomes.

    Returns ``[(syndrome, probability, post-measurement state), ...]`` for
    every outcome with non-negligible probability.
    """
    code = get_code(code)
    gens = [pauli_matrix(g.label) for g in stabilizers(code)]
    branches = [((), np.array(state, dtype=complex))]
    for g in gens:
        nxt = []
        for syn, v in branches:
            gv = g @ v
            for s in (1, -1):
                proj = 0.5 * (v + s * gv)
                if np.vdot(proj, proj).real > tol:
                    nxt.append((syn + (s,), proj))
        branches = nxt
    out = []
    for syn, v in branches:
        p = float(np.vdot(v, v).real)
        out.append((syn, p, v / math.sqrt(p)))
    return out


def single_error_candidates(n: int) -> list[str]:
    """Identity, then X, Z, Y on each qubit in increasing qubit order."""
    labels = ["I" * n]
    for q in range(n):
        for p in "XZY":
            labels.append(_label(n, {q: p}))
    return labels


def syndrome_table(code: CodeSpec | str) -> dict[tuple[int, ...], str]:
    """Map each reachable syndrome to the first single-qubit Pauli producing it.

    For the phase-flip code only Z errors (and for the bit-flip code only X
    errors) are guaranteed correctable; the table is built from those, with
    the other kinds added afterwards only if they reach a new syndrome.
    """
    code = get_code(code)
    ref = encode(code, [1, 0])
    gens = stabilizers(code)
    table: dict[tuple[int, ...], str] = {}
    order = single_error_candidates(code.n)
    if code.name == "bitflip":
        order = [l for l in order if set(l) <= {"I", "X"}] + [l for l in order if not set(l) <= {"I", "X"}]
    elif code.name == "phaseflip":
        order = [l for l in order if set(l) <= {"I", "Z"}] + [l for l in order if not set(l) <= {"I", "Z"}]
    for label in order:
        vals = verify_stabilizers(gens, apply_pauli_label(ref, label))
        syn = tuple(1 if v > 0 else -1 for v in vals)
        table.setdefault(syn, label)
    return table


def recover(code: CodeSpec | str, state: np.ndarray, syn: Sequence[int] | None = None) -> np.ndarray:
    """Apply the table correction for ``syn`` (measured from ``state`` if omitted)."""
    code = get_code(code)
    if syn is None:
        syn = syndrome(code, state)
    table = syndrome_table(code)
    try:
        label = table[tuple(int(s) for s in syn)]
    except KeyError:
        raise UncorrectableSyndrome(f"syndrome {tuple(syn)} is not in the table") from None
    return apply_pauli_label(state, label)


@dataclass
class TrialResult:
    error: str
    syndromes: list[tuple[int, ...]]
    probabilities: list[float]
    fidelity: float
    recovered: np.ndarray


def run_trial(code: CodeSpec | str, logical, error: ErrorEvent | str | None) -> TrialResult:
    """encode → error → projective syndrome → recover → decode.

    The reported fidelity is the worst over all syndrome outcomes, and the
    recovered amplitudes are from the most probable outcome, aligned to the
    input's global phase.
    """
    code = get_code(code)
    logical = np.asarray(logical, dtype=complex)
    logical = logical / np.linalg.norm(logical)
    if isinstance(error, str):
        error = parse_error(error)
    state = encode(code, logical)
    if error is not None:
        state = apply_error(code, state, error)
    worst = 1.0
    best_rec = None
    best_p = -1.0
    syns, probs = [], []
    for syn, p, post in syndrome_branches(code, state):
        fixed = recover(code, post, syn)
        rec, leak = decode(code, fixed)
        fid = float(abs(np.vdot(logical, rec)) ** 2) * (1.0 if leak < 1e-9 else 1.0 - leak)
        worst = min(worst, fid)
        syns.append(syn)
        probs.append(p)
        if p > best_p:
            best_p = p
            ov = np.vdot(rec, logical)
            best_rec = rec * (ov / abs(ov)) if abs(ov) > 1e-12 else rec
    return TrialResult(str(error) if error is not None else "none", syns, probs, worst, best_rec)


# ---------------------------------------------------------------------------
# bit-flip analysis


def failure_probability_bitflip(p: float) -> float:
    """Probability that two or more of three bits flip: 3p² − 2p³."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    return 3 * p**2 - 2 * p**3


def bitflip_pattern_fails(pattern: int) -> bool:
    """Simulate the three-qubit code on |0⟩ with X on the bits of ``pattern``."""
    code = CODES["bitflip"]
    state = encode(code, [1, 0])
    for q in range(3):
        if (pattern >> q) & 1:
            state = apply(state, gate_matrix("x"), (q,))
    fixed = recover(code, state)
    rec, _ = decode(code, fixed)
    return abs(rec[0]) ** 2 < 0.5


def monte_carlo_bitflip(p: float, trials: int, seed: int) -> float:
    """Logical failure rate from seeded independent flips on each qubit.

    Every distinct flip pattern is pushed through the full encode, syndrome,
    recover and decode pipeline once; trial counts come from the sampler.
    """
    rng = make_rng(seed)
    flips = rng.random((trials, 3)) < p
    patterns = flips @ np.array([1, 2, 4])
    counts = np.bincount(patterns, minlength=8)
    fails = sum(int(counts[k]) for k in range(8) if counts[k] and bitflip_pattern_fails(k))
    return fails / trials


def bitflip_ancilla_circuit() -> Circuit:
    """Data on qubits 0–2, parity ancillas on 3 (Z₀Z₁) and 4 (Z₁Z₂)."""
    return Circuit(5).cx(0, 3).cx(1, 3).cx(1, 4).cx(2, 4)


def bitflip_ancilla_syndrome(data_state: np.ndarray) -> tuple[int, int]:
    """Read the two parities through ancilla qubits instead of expectations."""
    psi = np.kron(np.eye(4)[:, 0], np.asarray(data_state, dtype=complex))  # ancillas |00⟩ above data
    out = simulate(bitflip_ancilla_circuit(), psi)
    probs = probabilities(out, [3, 4])
    k = int(np.argmax(probs))
    if probs[k] < 1 - 1e-9:
        raise UncorrectableSyndrome("ancilla readout is not deterministic")
    return (1 - 2 * (k & 1), 1 - 2 * ((k >> 1) & 1))


# ---------------------------------------------------------------------------
# counting bound and Knill–Laflamme


def hamming_bound(n: int, k: int, t: int) -> tuple[int, int, bool]:
    """``(Σ_{j≤t} 3^j C(n,j))·2^k`` versus ``2^n``."""
    if n < k or k < 0 or t < 0:
        raise ValueError("need n >= k >= 0 and t >= 0")
    lhs = sum(3**j * math.comb(n, j) for j in range(t + 1)) * 2**k
    rhs = 2**n
    return lhs, rhs, lhs == rhs


def error_operator(code: CodeSpec | str, error: ErrorEvent | str) -> np.ndarray:
    code = get_code(code)
    if isinstance(error, str):
        if error.upper() == "I":
            return np.eye(2**code.n, dtype=complex)
        error = parse_error(error)
    ops = [PAULI["I"]] * code.n
    ops[code.n - 1 - error.qubit] = error.operator()
    return kron_all(ops)


def knill_laflamme_check(code: CodeSpec | str, errors: Sequence[ErrorEvent | str], tol: float = 1e-9) -> bool:
    """True iff ⟨iL|Ea†Eb|jL⟩ = c_ab δ_ij for every pair of errors."""
    code = get_code(code)
    zero, one = logical_basis(code)
    basis = np.stack([zero, one], axis=1)
    mats = [error_operator(code, e) for e in errors]
    for ea in mats:
        for eb in mats:
            block = basis.conj().T @ ea.conj().T @ eb @ basis
            if abs(block[0, 1]) > tol or abs(block[1, 0]) > tol or abs(block[0, 0] - block[1, 1]) > tol:
                return False
    return True


def generators_commute(gens: Sequence[PauliTerm | str]) -> bool:
    """Pairwise commutation, decided site by site.

    Two Pauli strings commute exactly when the number of sites where both
    act non-trivially with different letters is even.
    """
    labels = [g if isinstance(g, str) else g.label for g in gens]
    for a, b in combinations(labels, 2):
        clashes = sum(1 for x, y in zip(a, b) if x != "I" and y != "I" and x != y)
        if clashes % 2:
            return False
    return True
