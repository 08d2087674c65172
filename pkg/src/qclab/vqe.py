"""Variational eigensolver with model Hamiltonians and an exact-diagonalization oracle.

Models
------
* Anharmonic oscillator on ``d = 2^n`` levels, either in the energy basis
  (ladder matrices) or on a position lattice with a DFT momentum operator.
  ``H = A†A + ½ − g X³ + h X⁴`` (energy basis) or
  ``H = ½P² + ½X² − g X³ + h X⁴`` (position basis).
* O(3) sigma model truncated at l_max = ½ on a periodic chain of 4 sites.

The ansatz is a hardware-efficient circuit: Ry and Rz on every qubit,
a linear CNOT chain, repeated ``layers`` times, then a last rotation layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .circuit import Circuit, _parity_signs, apply, expectation_pauli, gate_matrix, make_rng, simulate
from .core import as_matrix, is_hermitian, kron_all
from .errors import NotHermitian, ParamCountMismatch, UnsupportedSize
from .pauli import PAULI, PauliSum, pauli_decompose

# ---------------------------------------------------------------------------
# model Hamiltonians


@dataclass(frozen=True)
class OscillatorModel:
    n_qubits: int
    g: float = 0.0
    h: float = 0.0
    basis: str = "energy"


def oscillator_operators(n_qubits: int, basis: str = "energy") -> tuple[np.ndarray, np.ndarray]:
    """Return ``(X, P)`` on ``2^n`` levels in the requested basis."""
    d = 2**n_qubits
    if basis == "energy":
        a = np.diag(np.sqrt(np.arange(1, d, dtype=float)), 1).astype(complex)
        x = math.sqrt(0.5) * (a.conj().T + a)
        p = 1j * math.sqrt(0.5) * (a.conj().T - a)
        return x, p
    if basis == "position":
        lattice = (2.0 * np.arange(1, d + 1) - d - 1) / 2.0
        x = np.diag(math.sqrt(2.0 * math.pi / d) * lattice).astype(complex)
        f = np.exp(-2j * math.pi * np.outer(lattice, lattice) / d) / math.sqrt(d)
        p = f.conj().T @ x @ f
        return x, p
    raise ValueError(f"unknown basis {basis!r}")


def build_oscillator(model: OscillatorModel | int, g: float = 0.0, h: float = 0.0, basis: str = "energy") -> np.ndarray:
    if not isinstance(model, OscillatorModel):
        model = OscillatorModel(int(model), g, h, basis)
    if model.n_qubits < 1 or model.n_qubits > 6:
        raise UnsupportedSize("oscillator supports 1 to 6 qubits")
    d = 2**model.n_qubits
    x, p = oscillator_operators(model.n_qubits, model.basis)
    x3 = x @ x @ x
    x4 = x3 @ x
    if model.basis == "energy":
        a = np.diag(np.sqrt(np.arange(1, d, dtype=float)), 1).astype(complex)
        h0 = a.conj().T @ a + 0.5 * np.eye(d)
    else:
        h0 = 0.5 * (p @ p) + 0.5 * (x @ x)
    out = h0 - model.g * x3 + model.h * x4
    return 0.5 * (out + out.conj().T)


def oscillator_series(g: float) -> float:
    """Ground energy of the cubic oscillator through order g⁶."""
    return 0.5 - 11 / 8 * g**2 - 465 / 32 * g**4 - 39709 / 128 * g**6


@dataclass(frozen=True)
class O3Model:
    beta: float
    sites: int = 4
    coupling: str = "isotropic"


O3_COUPLINGS = {
    # weight on N+N- + N-N+ per bond, weight on ZZ per bond
    "isotropic": (1.0 / 18.0, 1.0 / 9.0),
    "listing": (1.0, 1.0 / 9.0),
}


def build_o3(model: O3Model | float, sites: int = 4, coupling: str = "isotropic") -> np.ndarray:
    """O(3) chain at l_max = ½ with periodic boundary.

    ``H = N·3/(8β) + β Σ_<ij> [w (N⁺ᵢN⁻ⱼ + N⁻ᵢN⁺ⱼ) + ZᵢZⱼ/9]`` with
    ``N± = X ± iY``.  The ``isotropic`` coupling uses ``w = 1/18`` so that
    each bond carries ``(XX + YY + ZZ)/9``; ``listing`` keeps ``w = 1``.
    """
    if not isinstance(model, O3Model):
        model = O3Model(float(model), sites, coupling)
    if model.sites != 4:
        raise UnsupportedSize("only the 4-site periodic chain is implemented")
    if model.beta <= 0:
        raise ValueError("beta must be positive")
    w_hop, w_zz = O3_COUPLINGS[model.coupling]
    n = model.sites
    nplus = PAULI["X"] + 1j * PAULI["Y"]
    nminus = PAULI["X"] - 1j * PAULI["Y"]
    eye = PAULI["I"]

    def site_ops(ops: dict[int, np.ndarray]) -> np.ndarray:
        # site 0 is the leftmost Kronecker factor, as in the printed listing
        return kron_all(ops.get(s, eye) for s in range(n))

    h = n * 3.0 / (8.0 * model.beta) * np.eye(2**n, dtype=complex)
    for i in range(n):
        j = (i + 1) % n
        bond = w_hop * (site_ops({i: nplus, j: nminus}) + site_ops({i: nminus, j: nplus}))
        bond = bond + w_zz * site_ops({i: PAULI["Z"], j: PAULI["Z"]})
        h = h + model.beta * bond
    return h


def exact_ground_energy(h) -> float:
    h = as_matrix(h)
    if not is_hermitian(h):
        raise NotHermitian("exact_ground_energy needs a Hermitian matrix")
    return float(np.linalg.eigvalsh(0.5 * (h + h.conj().T))[0])


# ---------------------------------------------------------------------------
# ansatz and energy


@dataclass(frozen=True)
class Ansatz:
    n_qubits: int
    layers: int = 1

    @property
    def n_params(self) -> int:
        return 2 * self.n_qubits * (self.layers + 1)

    def _check(self, params) -> np.ndarray:
        p = np.asarray(params, dtype=float).reshape(-1)
        if p.size != self.n_params:
            raise ParamCountMismatch(f"ansatz needs {self.n_params} parameters, got {p.size}")
        return p

    def circuit(self, params) -> Circuit:
        """Per block: (Ry, Rz) for qubit 0, then qubit 1, …; a CNOT chain
        q → q+1 follows every block except the last."""
        p = self._check(params)
        n = self.n_qubits
        c = Circuit(n)
        k = 0
        for layer in range(self.layers + 1):
            for q in range(n):
                c.ry(p[k], q).rz(p[k + 1], q)
                k += 2
            if layer < self.layers:
                for q in range(n - 1):
                    c.cx(q, q + 1)
        return c

    def state(self, params) -> np.ndarray:
        return simulate(self.circuit(params))

    def fast_state(self, params) -> np.ndarray:
        """Same state as :meth:`state`, built from per-layer Kronecker
        products and a CNOT-chain permutation (for the optimizer loop)."""
        p = self._check(params)
        n = self.n_qubits
        psi = np.zeros(2**n, dtype=complex)
        psi[0] = 1.0
        perm = _cnot_chain_permutation(n)
        k = 0
        for layer in range(self.layers + 1):
            mats = []
            for q in range(n):
                mats.append(_rz(p[k + 1]) @ _ry(p[k]))
                k += 2
            psi = kron_all(reversed(mats)) @ psi
            if layer < self.layers:
                psi = psi[perm]
        return psi


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


_PERM_CACHE: dict[int, np.ndarray] = {}


def _cnot_chain_permutation(n: int) -> np.ndarray:
    """Index map ``new[b] = old[perm[b]]`` for CNOT(0→1), …, CNOT(n−2→n−1)."""
    if n not in _PERM_CACHE:
        src = np.arange(2**n)
        for q in range(n - 1):
            ctrl = (src >> q) & 1
            src = src ^ (ctrl << (q + 1))
        inv = np.empty_like(src)
        inv[src] = np.arange(2**n)
        _PERM_CACHE[n] = inv
    return _PERM_CACHE[n]


def ansatz_state(ansatz: Ansatz, params) -> np.ndarray:
    return ansatz.state(params)


def energy(ansatz: Ansatz, params, h: PauliSum) -> float:
    """Σ coeff · ⟨ψ(θ)|P|ψ(θ)⟩ with one exact expectation per Pauli string."""
    psi = ansatz.state(params)
    return pauli_sum_expectation(psi, h)


def pauli_sum_expectation(psi: np.ndarray, h: PauliSum) -> float:
    """Exact ⟨ψ|H|ψ⟩ for a Pauli sum (see :class:`PauliSumEvaluator`)."""
    return PauliSumEvaluator(h)(psi)


class PauliSumEvaluator:
    """Precomputed measurement plan for repeated ⟨ψ|H|ψ⟩ evaluations.

    Each string is measured by rotating X sites with H and Y sites with
    H_y and then summing signed Z parities.  Strings needing the same
    rotation are grouped so one rotated probability vector serves them all.
    """

    def __init__(self, h: PauliSum):
        n = h.n_qubits
        groups: dict[str, list[tuple[float, int]]] = {}
        for term in h.terms:
            key = "".join(c if c in "XY" else "Z" for c in term.label)
            zmask = sum(1 << (n - 1 - i) for i, c in enumerate(term.label) if c != "I")
            groups.setdefault(key, []).append((float(np.real(term.coeff)), zmask))
        rot = {"X": gate_matrix("h").matrix, "Y": gate_matrix("hy").matrix, "Z": np.eye(2)}
        self.n_qubits = n
        self.plan = []
        for key, items in groups.items():
            r = None if set(key) == {"Z"} else kron_all(rot[c] for c in key)
            weights = sum(c * _parity_signs(n, m) for c, m in items)
            self.plan.append((r, np.asarray(weights, dtype=float)))

    def __call__(self, psi: np.ndarray) -> float:
        total = 0.0
        for r, w in self.plan:
            amp = psi if r is None else r @ psi
            total += float(np.dot(w, amp.real**2 + amp.imag**2))
        return total


# ---------------------------------------------------------------------------
# optimizer


@dataclass(frozen=True)
class OptimizerConfig:
    method: str = "nelder-mead"
    max_iters: int = 5000
    simplex_scale: float = 0.25
    f_tol: float = 1e-9
    x_tol: float = 1e-9
    restarts: int = 5
    seed: int = 0


@dataclass
class VQEResult:
    energy: float
    params: np.ndarray
    iterations: int
    restarts: int
    evaluations: int
    converged: bool
    history: list[float] = field(default_factory=list)


def vqe_minimize(h: PauliSum, ansatz: Ansatz, opt: OptimizerConfig = OptimizerConfig()) -> VQEResult:
    """Nelder–Mead over the ansatz parameters with seeded restarts.

    Restart 0 starts from parameters drawn uniformly in [−0.1, 0.1].  Each
    further restart rebuilds the simplex around the best point found so
    far, nudged by fresh uniform noise.  Stops early once a restart fails to
    improve the best energy by more than ``f_tol``.
    """
    if opt.method != "nelder-mead":
        raise ValueError("only nelder-mead is available")
    if ansatz.n_qubits != h.n_qubits:
        raise ParamCountMismatch("ansatz and Hamiltonian disagree on qubit count")
    rng = make_rng(opt.seed)
    dim = ansatz.n_params
    best_x = rng.uniform(-0.1, 0.1, dim)
    best_e = math.inf
    total_iters = 0
    total_evals = 0
    converged = False
    history: list[float] = []
    used = 0

    evaluate = PauliSumEvaluator(h)

    def f(x):
        return evaluate(ansatz.fast_state(x))

    for restart in range(max(1, opt.restarts)):
        used = restart + 1
        x0 = best_x if restart == 0 else best_x + rng.uniform(-0.1, 0.1, dim)
        simplex = np.vstack([x0] + [x0 + opt.simplex_scale * e for e in np.eye(dim)])
        res = minimize(
            f,
            x0,
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "maxiter": opt.max_iters,
                "maxfev": 10 * opt.max_iters,
                "fatol": opt.f_tol,
                "xatol": opt.x_tol,
            },
        )
        total_iters += int(res.nit)
        total_evals += int(res.nfev)
        converged = bool(res.success)
        improved = best_e - float(res.fun)
        if float(res.fun) < best_e:
            best_e = float(res.fun)
            best_x = np.asarray(res.x, dtype=float)
        history.append(best_e)
        if restart > 0 and improved <= opt.f_tol:
            break
    return VQEResult(best_e, best_x, total_iters, used, total_evals, converged, history)


def oscillator_pauli(n_qubits: int, g: float = 0.0, h: float = 0.0, basis: str = "energy") -> PauliSum:
    return pauli_decompose(build_oscillator(OscillatorModel(n_qubits, g, h, basis)))


def o3_pauli(beta: float, coupling: str = "isotropic") -> PauliSum:
    return pauli_decompose(build_o3(O3Model(beta, 4, coupling)))
