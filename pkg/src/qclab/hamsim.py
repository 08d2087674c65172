"""Hamiltonian simulation: Pauli-evolution circuits, product formulas and
analytic error/cost bounds.

Evolution is ``U(t) = exp(-iHt)`` throughout, except for
:func:`pauli_evolution_circuit`, which realizes ``exp(+i·c·t·P)`` so that
the two-qubit case reads ``CNOT · (1 ⊗ Rz(-2t)) · CNOT = exp(it Z⊗Z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import expm

from .circuit import Circuit, circuit_unitary
from .core import matrix_exp_hermitian, spectral_norm
from .errors import AllIdentity, BadLabel
from .pauli import (
    PauliSum,
    PauliTerm,
    label_qubit_ops,
    load_hamiltonian,
    pauli_decompose,
    pauli_matrix,
)

__all__ = [
    "PauliSum", "PauliTerm", "pauli_decompose", "pauli_matrix", "load_hamiltonian",
    "TrotterPlan", "pauli_evolution_circuit", "exact_evolution", "term_exponential",
    "trotter_unitary", "trotter_circuit", "trotter_error", "taylor_truncation_bound",
    "choose_taylor_order", "taylor_unitary", "cnot_cost_bounds", "xxyy_compact_circuit",
    "lie_product", "bch_special_rhs",
]


@dataclass(frozen=True)
class TrotterPlan:
    order: int = 1
    steps: int = 1
    time: float = 1.0

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError("Trotter order must be 1 or 2")
        if self.steps < 1:
            raise ValueError("Trotter steps must be >= 1")


def _real_coeff(term: PauliTerm) -> float:
    c = complex(term.coeff)
    if abs(c.imag) > 1e-12:
        raise BadLabel("evolution needs a real coefficient")
    return c.real


def pauli_evolution_circuit(term: PauliTerm, t: float) -> Circuit:
    """Circuit for ``exp(+i·coeff·t·P)``.

    Basis change (H for X, H_y for Y) on the active qubits, a CNOT ladder
    collecting parity on the highest active qubit, ``Rz(-2·coeff·t)`` there,
    then everything undone in reverse.  Identity sites are untouched.
    """
    ops = label_qubit_ops(term.label)
    if not ops:
        raise AllIdentity("an all-identity string only contributes a global phase")
    coeff = _real_coeff(term)
    n = len(term.label)
    active = sorted(q for q, _ in ops)
    kinds = dict(ops)
    c = Circuit(n)
    for q in active:
        if kinds[q] == "X":
            c.h(q)
        elif kinds[q] == "Y":
            c.hy(q)
    ladder = list(zip(active[:-1], active[1:]))
    for a, b in ladder:
        c.cx(a, b)
    c.rz(-2.0 * coeff * t, active[-1])
    for a, b in reversed(ladder):
        c.cx(a, b)
    for q in active:
        if kinds[q] == "X":
            c.h(q)
        elif kinds[q] == "Y":
            c.hy(q)
    return c


def xxyy_compact_circuit(alpha: float) -> Circuit:
    """Seven-layer circuit equal to ``exp(i(α/2)(X⊗X + Y⊗Y))``.

    The printed top wire is qubit 1: CNOT, H(top), CNOT, Rz(−α)⊗Rz(α),
    CNOT, H(top), CNOT, with every CNOT controlled by the top wire.
    """
    c = Circuit(2)
    c.cx(1, 0).h(1).cx(1, 0)
    c.rz(-alpha, 1).rz(alpha, 0)
    c.cx(1, 0).h(1).cx(1, 0)
    return c


def exact_evolution(h: PauliSum | np.ndarray, t: float) -> np.ndarray:
    m = h.matrix() if isinstance(h, PauliSum) else np.asarray(h, dtype=complex)
    return matrix_exp_hermitian(m, -1j * t)


def term_exponential(term: PauliTerm, tau: float) -> np.ndarray:
    """``exp(-i·c·τ·P) = cos(cτ)·1 − i·sin(cτ)·P`` since P² = 1."""
    c = _real_coeff(term)
    p = pauli_matrix(term.label)
    return math.cos(c * tau) * np.eye(p.shape[0]) - 1j * math.sin(c * tau) * p


def trotter_unitary(h: PauliSum, plan: TrotterPlan) -> np.ndarray:
    """Product-formula approximation of ``exp(-iHt)``.

    Order 1 applies the terms in listed order each step.  Order 2 sweeps
    forward then backward with half steps.
    """
    dt = plan.time / plan.steps
    dim = 2**h.n_qubits
    if plan.order == 1:
        factors = [term_exponential(term, dt) for term in h.terms]
    else:
        halves = [term_exponential(term, dt / 2.0) for term in h.terms]
        factors = halves + halves[::-1]
    step = np.eye(dim, dtype=complex)
    for f in factors:
        step = f @ step
    return np.linalg.matrix_power(step, plan.steps)


def trotter_circuit(h: PauliSum, plan: TrotterPlan) -> Circuit:
    """Gate-level version of :func:`trotter_unitary` (equal up to global phase)."""
    dt = plan.time / plan.steps
    seq: list[tuple[PauliTerm, float]]
    if plan.order == 1:
        seq = [(term, dt) for term in h.terms]
    else:
        seq = [(term, dt / 2.0) for term in h.terms]
        seq = seq + seq[::-1]
    c = Circuit(h.n_qubits)
    for _ in range(plan.steps):
        for term, tau in seq:
            if term.is_identity():
                continue
            # exp(-i c τ P) is exp(+i (-c) τ P)
            c.extend(pauli_evolution_circuit(PauliTerm(-_real_coeff(term), term.label), tau))
    return c


def trotter_error(h: PauliSum, plan: TrotterPlan) -> float:
    """Spectral-norm distance between the product formula and ``exp(-iHt)``."""
    return spectral_norm(trotter_unitary(h, plan) - exact_evolution(h, plan.time))


def taylor_truncation_bound(alpha: float, t: float, r: int, K: int) -> float:
    """``e^{x} x^{K+1}/(K+1)!`` with ``x = αt/r``."""
    x = alpha * t / r
    return math.exp(x) * math.exp((K + 1) * math.log(x) - math.lgamma(K + 2)) if x > 0 else 0.0


def choose_taylor_order(alpha_t: float, epsilon: float, max_order: int = 10_000) -> int:
    """Smallest K ≥ 1 whose truncation bound (single segment) is at most ε.

    Asymptotically K grows like log(αt/ε)/log log(αt/ε); this routine scans
    instead of using that estimate.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    for K in range(1, max_order + 1):
        if taylor_truncation_bound(alpha_t, 1.0, 1, K) <= epsilon:
            return K
    raise ValueError("no Taylor order found below max_order")


def taylor_unitary(h: PauliSum, t: float, K: int, r: int = 1) -> np.ndarray:
    """Dense truncated Taylor series of ``exp(-iHt/r)`` raised to the r-th power."""
    m = -1j * (t / r) * h.matrix()
    dim = m.shape[0]
    term = np.eye(dim, dtype=complex)
    total = term.copy()
    for k in range(1, K + 1):
        term = term @ m / k
        total = total + term
    return np.linalg.matrix_power(total, r)


def cnot_cost_bounds(n: int) -> tuple[int, int]:
    """(ceil of ``(4^n − 3n − 1)/4``, ceil of ``23/48·4^n − 3/2·2^n + 4/3``)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lower = Fraction(4**n - 3 * n - 1, 4)
    qsd = Fraction(23, 48) * 4**n - Fraction(3, 2) * 2**n + Fraction(4, 3)
    return math.ceil(lower), math.ceil(qsd)


def lie_product(a: np.ndarray, b: np.ndarray, N: int) -> np.ndarray:
    """``(e^{A/N} e^{B/N})^N`` for general square matrices."""
    step = expm(np.asarray(a) / N) @ expm(np.asarray(b) / N)
    return np.linalg.matrix_power(step, N)


def bch_special_rhs(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``e^{A + B + [A,B]/2}``, equal to ``e^A e^B`` when [A,B] is central."""
    a = np.asarray(a)
    b = np.asarray(b)
    return expm(a + b + 0.5 * (a @ b - b @ a))


def pauli_evolution_unitary(term: PauliTerm, t: float) -> np.ndarray:
    return circuit_unitary(pauli_evolution_circuit(term, t))
