"""Dense complex linear algebra shared by the rest of the package.

Conventions used everywhere:

* Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
* Multi-qubit operators are built with ``np.kron`` in *printed* order, so
  the leftmost factor acts on the highest-index qubit.  A basis index ``b``
  stores qubit ``q`` in bit ``q`` (little-endian).
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import BadIndex, DimensionMismatch, NotHermitian

HERMITIAN_RTOL = 1e-10

__all__ = [
    "as_matrix",
    "tensor_product",
    "kron_all",
    "is_hermitian",
    "is_unitary",
    "matrix_exp_hermitian",
    "partial_trace",
    "approx_equal_up_to_global_phase",
    "spectral_norm",
    "basis_state",
]


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex array (1-D inputs become column vectors)."""
    m = np.asarray(a, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.size == 0:
        raise DimensionMismatch(f"expected a non-empty matrix, got shape {m.shape}")
    return m


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b`` with ``(a⊗b)[i*rb+k, j*cb+l] = a[i,j] b[k,l]``."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(mats: Iterable) -> np.ndarray:
    """Left-to-right Kronecker chain of ``mats``."""
    return reduce(np.kron, (np.asarray(m, dtype=complex) for m in mats), np.ones((1, 1), complex))


def is_hermitian(h, rtol: float = HERMITIAN_RTOL) -> bool:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        return False
    scale = max(float(np.max(np.abs(h))), 1.0) if h.size else 1.0
    return bool(np.max(np.abs(h - h.conj().T), initial=0.0) <= rtol * scale)


def is_unitary(u, atol: float = 1e-10) -> bool:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=atol, rtol=0))


def matrix_exp_hermitian(h, scale: complex) -> np.ndarray:
    """Return ``exp(scale * h)`` for Hermitian ``h`` via ``h = V D V†``.

    The Hermiticity check is relative to the largest entry of ``h``.  With a
    purely imaginary ``scale`` the result is unitary to eigensolver accuracy.
    """
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got {h.shape}")
    if not is_hermitian(h):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    h = 0.5 * (h + h.conj().T)
    evals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(scale * evals)) @ vecs.conj().T


def partial_trace(rho, n_qubits: int, traced: Sequence[int]) -> np.ndarray:
    """Trace out the qubits listed in ``traced`` from a ``2^n × 2^n`` matrix.

    The result acts on the kept qubits with their relative order preserved,
    so kept qubit indices are renumbered from 0 upward.
    """
    rho = as_matrix(rho)
    dim = 2**n_qubits
    if rho.shape != (dim, dim):
        raise DimensionMismatch(f"expected {dim}x{dim} matrix for {n_qubits} qubits, got {rho.shape}")
    traced = list(traced)
    if len(set(traced)) != len(traced) or any(not 0 <= q < n_qubits for q in traced):
        raise BadIndex(f"invalid traced qubits {traced} for n={n_qubits}")
    if not traced:
        return rho.copy()
    t = rho.reshape([2] * (2 * n_qubits))
    # With m qubits left, qubit q sits on row axis m-1-q and column axis
    # 2m-1-q.  Removing the highest qubits first leaves lower indices intact.
    n_left = n_qubits
    for q in sorted(traced, reverse=True):
        row_axis = n_left - 1 - q
        t = np.trace(t, axis1=row_axis, axis2=row_axis + n_left)
        n_left -= 1
    keep = 2**n_left
    return t.reshape(keep, keep)


def approx_equal_up_to_global_phase(a, b, tol: float = 1e-10) -> bool:
    """True iff ``max|a - e^{iφ} b| <= tol`` for the phase read off b's largest entry."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch {a.shape} vs {b.shape}")
    flat_b = b.ravel()
    k = int(np.argmax(np.abs(flat_b)))
    ref = flat_b[k]
    if abs(ref) == 0.0:
        return bool(np.max(np.abs(a), initial=0.0) <= tol)
    ratio = a.ravel()[k] / ref
    phase = ratio / abs(ratio) if abs(ratio) > 0 else 1.0
    return bool(np.max(np.abs(a - phase * b)) <= tol)


def spectral_norm(m) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(as_matrix(m), ord=2))


def basis_state(bits: str) -> np.ndarray:
    """Statevector of a computational basis ket written in printed order.

    ``basis_state("10")`` is |1⟩⊗|0⟩, i.e. qubit 1 set, index 2.
    """
    if not bits or any(c not in "01" for c in bits):
        raise DimensionMismatch(f"bad basis label {bits!r}")
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v
