"""Density-matrix analytics for pure and mixed states.

Entropies use the natural log unless ``log_base=2`` is requested.  Matrices
passed to the entropy functions may have any square dimension, which lets a
qutrit density matrix go through the same code path as qubit registers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import n_qubits_of
from .core import as_matrix, is_hermitian, partial_trace
from .errors import BadPartition, DimensionMismatch, NotHermitian, NotNormalized, WrongSize

EIG_CLIP = 1e-9
SCHMIDT_TOL = 1e-9


def _log(x: np.ndarray, base) -> np.ndarray:
    return np.log(x) if base in (None, "e", math.e) else np.log(x) / np.log(base)


def _check_normalized(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise NotNormalized(f"state norm is {np.linalg.norm(psi):.3g}")
    return psi


def _check_density(rho) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"density matrix must be square, got {rho.shape}")
    if not is_hermitian(rho):
        raise NotHermitian("density matrix is not Hermitian")
    return 0.5 * (rho + rho.conj().T)


def density_from_state(psi) -> np.ndarray:
    psi = _check_normalized(psi)
    return np.outer(psi, psi.conj())


def reduced_density(psi, keep: Sequence[int]) -> np.ndarray:
    """ρ of the qubits in ``keep`` for the pure state ``psi``."""
    psi = _check_normalized(psi)
    n = n_qubits_of(psi)
    traced = [q for q in range(n) if q not in set(keep)]
    return partial_trace(np.outer(psi, psi.conj()), n, traced)


def purity(rho) -> float:
    rho = _check_density(rho)
    return float(np.real(np.trace(rho @ rho)))


def _spectrum(rho) -> np.ndarray:
    ev = np.linalg.eigvalsh(_check_density(rho))
    return np.where(ev < EIG_CLIP, 0.0, ev)


def von_neumann_entropy(rho, log_base=None) -> float:
    ev = _spectrum(rho)
    ev = ev[ev > 0]
    return float(-np.sum(ev * _log(ev, log_base)))


def relative_entropy(rho, sigma, log_base=None) -> float:
    """Tr ρ(log ρ − log σ); ``math.inf`` when supp ρ ⊄ supp σ."""
    rho = _check_density(rho)
    sigma = _check_density(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch("ρ and σ must have the same dimension")
    er, vr = np.linalg.eigh(rho)
    es, vs = np.linalg.eigh(sigma)
    kernel = vs[:, es <= EIG_CLIP]
    if kernel.size and np.max(np.abs(kernel.conj().T @ rho @ kernel)) > EIG_CLIP:
        return math.inf
    er = np.where(er < EIG_CLIP, 0.0, er)
    pos_r = er > 0
    s_rho = float(np.sum(er[pos_r] * _log(er[pos_r], log_base)))
    pos_s = es > EIG_CLIP
    log_sigma = (vs[:, pos_s] * _log(es[pos_s], log_base)) @ vs[:, pos_s].conj().T
    cross = float(np.real(np.trace(rho @ log_sigma)))
    val = s_rho - cross
    return 0.0 if abs(val) < 1e-12 else val


@dataclass(frozen=True)
class SchmidtDecomposition:
    coefficients: np.ndarray
    left_basis: np.ndarray  # columns
    right_basis: np.ndarray  # columns

    @property
    def schmidt_number(self) -> int:
        return int(np.sum(self.coefficients > SCHMIDT_TOL))


def schmidt(psi, cut: Sequence[int]) -> SchmidtDecomposition:
    """Schmidt form across the bipartition ``cut | rest``.

    The left factor holds the qubits listed in ``cut`` ordered from high to
    low index, matching how the state itself is printed.
    """
    psi = _check_normalized(psi)
    n = n_qubits_of(psi)
    a = sorted(set(cut), reverse=True)
    if not a or len(a) == n or any(not 0 <= q < n for q in a) or len(a) != len(list(cut)):
        raise BadPartition(f"cut {list(cut)} is not a proper subset of {n} qubits")
    b = [q for q in range(n - 1, -1, -1) if q not in a]
    t = psi.reshape([2] * n).transpose([n - 1 - q for q in a] + [n - 1 - q for q in b])
    m = t.reshape(2 ** len(a), 2 ** len(b))
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    return SchmidtDecomposition(s, u, vh.conj().T)


def _two_qubit(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape != (4,):
        raise WrongSize("expected a 2-qubit pure state")
    return _check_normalized(psi)


def concurrence(psi) -> float:
    """2|ad − bc| for amplitudes (a, b, c, d) of a pure 2-qubit state."""
    a, b, c, d = _two_qubit(psi)
    return float(min(1.0, 2.0 * abs(a * d - b * c)))


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * math.log2(x) - (1 - x) * math.log2(1 - x))


def eof_from_concurrence(c: float) -> float:
    return binary_entropy(0.5 * (1.0 + math.sqrt(max(0.0, 1.0 - c * c))))


def entanglement_of_formation(psi) -> float:
    return eof_from_concurrence(concurrence(psi))


def state_fidelity(a, b) -> float:
    a = _check_normalized(a)
    b = _check_normalized(b)
    if a.shape != b.shape:
        raise DimensionMismatch("states differ in dimension")
    return float(abs(np.vdot(a, b)) ** 2)
