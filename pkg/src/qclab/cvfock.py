"""Bosonic modes in a truncated Fock basis (ℏ = 1).

A single mode keeps levels ``0 .. cutoff-1``; two-mode operators act on
``cutoff**2`` amplitudes with the first mode as the left Kronecker factor.
Truncation spoils operator algebra near the top level, so identity checks
look only at the interior block of levels below ``cutoff - 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import poisson

from .core import matrix_exp_hermitian
from .errors import BadIndex, TruncationLeakage, UnknownGate, UnknownIdentity

LEAKAGE_LIMIT = 1e-6


def _check_cutoff(cutoff: int, minimum: int = 2) -> int:
    cutoff = int(cutoff)
    if cutoff < minimum:
        raise BadIndex(f"cutoff must be >= {minimum}")
    return cutoff


def ladder_ops(cutoff: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(a, a†, n)`` truncated to ``cutoff`` levels."""
    cutoff = _check_cutoff(cutoff)
    a = np.diag(np.sqrt(np.arange(1, cutoff)), k=1).astype(complex)
    return a, a.conj().T.copy(), np.diag(np.arange(cutoff)).astype(complex)


def quadratures(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    a, ad, _ = ladder_ops(cutoff)
    return (a + ad) / math.sqrt(2), 1j * (ad - a) / math.sqrt(2)


def two_mode_ladders(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """Annihilators ``a ⊗ 1`` and ``1 ⊗ b`` on the two-mode space."""
    a, _, _ = ladder_ops(cutoff)
    eye = np.eye(cutoff)
    return np.kron(a, eye), np.kron(eye, a)


def _exp_antihermitian(g: np.ndarray) -> np.ndarray:
    # exp(G) for G† = -G, computed from the Hermitian matrix -iG
    return matrix_exp_hermitian(-1j * g, 1j)


def unitarity_defect(u: np.ndarray) -> float:
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


# ---------------------------------------------------------------------------
# gates


def displacement(alpha: complex, cutoff: int) -> np.ndarray:
    a, ad, _ = ladder_ops(cutoff)
    return _exp_antihermitian(alpha * ad - np.conj(alpha) * a)


def squeeze(r: float, phi: float, cutoff: int) -> np.ndarray:
    a, ad, _ = ladder_ops(cutoff)
    z = r * np.exp(1j * phi)
    return _exp_antihermitian(0.5 * (np.conj(z) * a @ a - z * ad @ ad))


def rotation(phi: float, cutoff: int) -> np.ndarray:
    return np.diag(np.exp(1j * phi * np.arange(_check_cutoff(cutoff))))


def kerr(kappa: float, cutoff: int) -> np.ndarray:
    n = np.arange(_check_cutoff(cutoff))
    return np.diag(np.exp(1j * kappa * n**2))


def cubic_phase(gamma: float, cutoff: int) -> np.ndarray:
    """``exp(iγx³/6)``.  Badly truncation-sensitive; treat results as qualitative."""
    x, _ = quadratures(cutoff)
    return matrix_exp_hermitian(x @ x @ x / 6.0, 1j * gamma)


def beamsplitter(theta: float, phi: float, cutoff: int) -> np.ndarray:
    a, b = two_mode_ladders(cutoff)
    g = theta * (np.exp(1j * phi) * a @ b.conj().T - np.exp(-1j * phi) * a.conj().T @ b)
    return _exp_antihermitian(g)


def two_mode_squeeze(r: float, phi: float, cutoff: int) -> np.ndarray:
    a, b = two_mode_ladders(cutoff)
    z = r * np.exp(1j * phi)
    g = z * a.conj().T @ b.conj().T - np.conj(z) * a @ b
    return _exp_antihermitian(g)


def controlled_x(r: float, cutoff: int) -> np.ndarray:
    """``exp(-i r x₁ p₂)``."""
    x, p = quadratures(cutoff)
    return matrix_exp_hermitian(np.kron(x, p), -1j * r)


_GATES = {
    "displacement": (displacement, 1),
    "squeeze": (squeeze, 2),
    "rotation": (rotation, 1),
    "beamsplitter": (beamsplitter, 2),
    "two-mode-squeeze": (two_mode_squeeze, 2),
    "kerr": (kerr, 1),
    "cubic": (cubic_phase, 1),
    "cx": (controlled_x, 1),
}

CV_GATES = tuple(_GATES)


def cv_gate(name: str, params, cutoff: int) -> np.ndarray:
    """Dense matrix of a named CV gate.

    ``params`` is a sequence: displacement takes one (possibly complex)
    amplitude, squeeze and the two-mode gates take ``(r or θ, φ)``, the rest
    take a single real number.  Two-mode gates return ``cutoff²`` matrices.
    """
    try:
        fn, count = _GATES[name]
    except KeyError:
        raise UnknownGate(f"unknown CV gate {name!r}") from None
    params = list(np.atleast_1d(params))
    if len(params) != count:
        raise BadIndex(f"{name} takes {count} parameter(s), got {len(params)}")
    _check_cutoff(cutoff, 4)
    if name != "displacement":
        params = [float(np.real(p)) for p in params]
    return fn(*params, cutoff)


# ---------------------------------------------------------------------------
# states


@dataclass
class FockState:
    cutoff: int
    amps: np.ndarray
    leakage: float = 0.0

    def expect(self, op: np.ndarray) -> complex:
        return complex(np.vdot(self.amps, op @ self.amps))

    def photon_number(self) -> float:
        return float(np.sum(np.arange(self.cutoff) * np.abs(self.amps) ** 2))


def _normalized(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def fock_state(n: int, cutoff: int) -> FockState:
    cutoff = _check_cutoff(cutoff)
    if not 0 <= n < cutoff:
        raise BadIndex(f"level {n} outside cutoff {cutoff}")
    v = np.zeros(cutoff, dtype=complex)
    v[n] = 1.0
    return FockState(cutoff, v)


def vacuum(cutoff: int) -> FockState:
    return fock_state(0, cutoff)


def coherent_amplitudes(alpha: complex, cutoff: int) -> np.ndarray:
    """Untruncated-norm amplitudes ``e^{-|α|²/2} αⁿ/√n!`` for n < cutoff."""
    n = np.arange(_check_cutoff(cutoff))
    log_fact = np.array([math.lgamma(k + 1) for k in n])
    amps = np.zeros(cutoff, dtype=complex)
    if alpha == 0:
        amps[0] = 1.0
        return amps
    mag = np.exp(n * math.log(abs(alpha)) - 0.5 * log_fact - 0.5 * abs(alpha) ** 2)
    return mag * np.exp(1j * np.angle(alpha) * n)


def coherent_leakage(alpha: complex, cutoff: int) -> float:
    """Weight of a coherent state above the cutoff (a Poisson tail)."""
    return float(poisson.sf(cutoff - 1, abs(alpha) ** 2))


def _guard(leak: float, what: str, limit: float = LEAKAGE_LIMIT) -> None:
    if leak >= limit:
        raise TruncationLeakage(f"{what} loses {leak:.3g} of its norm above the cutoff; raise the cutoff")


def coherent_state(alpha: complex, cutoff: int, max_leakage: float = LEAKAGE_LIMIT) -> FockState:
    leak = coherent_leakage(alpha, cutoff)
    _guard(leak, f"coherent state α={alpha}", max_leakage)
    return FockState(cutoff, _normalized(coherent_amplitudes(alpha, cutoff)), leak)


def cat_state(alpha: complex, phi: float, cutoff: int, max_leakage: float = LEAKAGE_LIMIT) -> FockState:
    """Normalized ``|α⟩ + e^{iφ}|−α⟩``.

    Fails for the odd cat at α = 0, where the superposition vanishes.
    """
    leak = coherent_leakage(alpha, cutoff)
    _guard(leak, f"cat state α={alpha}", max_leakage)
    v = coherent_amplitudes(alpha, cutoff) + np.exp(1j * phi) * coherent_amplitudes(-alpha, cutoff)
    norm = np.linalg.norm(v)
    if norm < 1e-12:
        raise BadIndex("cat state vanishes for these parameters")
    return FockState(cutoff, v / norm, leak)


def cat_normalization(alpha: complex, phi: float) -> float:
    return (2 + 2 * math.exp(-2 * abs(alpha) ** 2) * math.cos(phi)) ** -0.5


def squeezed_vacuum_amplitudes(r: float, phi: float, cutoff: int) -> np.ndarray:
    """Analytic even-level amplitudes of ``S(re^{iφ})|0⟩``."""
    amps = np.zeros(_check_cutoff(cutoff), dtype=complex)
    t = -np.exp(1j * phi) * math.tanh(r)
    for m in range(0, (cutoff + 1) // 2):
        log_mag = 0.5 * math.lgamma(2 * m + 1) - m * math.log(2) - math.lgamma(m + 1)
        amps[2 * m] = t**m * math.exp(log_mag) / math.sqrt(math.cosh(r))
    return amps


def squeezed_state(r: float, phi: float, cutoff: int, max_leakage: float = LEAKAGE_LIMIT) -> FockState:
    amps = squeezed_vacuum_amplitudes(r, phi, cutoff)
    leak = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
    _guard(leak, f"squeezed vacuum r={r}", max_leakage)
    return FockState(cutoff, _normalized(amps), leak)


def coherent_overlap(beta: complex, alpha: complex) -> complex:
    """Exact ``⟨β|α⟩ = exp(-|α|²/2 - |β|²/2 + β̄α)``."""
    return complex(np.exp(-0.5 * abs(alpha) ** 2 - 0.5 * abs(beta) ** 2 + np.conj(beta) * alpha))


# ---------------------------------------------------------------------------
# operator identities


def interior_defect(lhs: np.ndarray, rhs: np.ndarray, cutoff: int, modes: int = 1) -> float:
    """Largest entry of ``lhs − rhs`` on the interior block.

    One mode: levels below ``cutoff − 2``.  Two modes: basis states whose
    total photon number is below ``cutoff − 2``, which keeps every
    number-conserving sector complete.  ``lhs`` may live on a larger
    (padded) space; only its leading levels are compared.
    """
    if modes == 2:
        total = np.add.outer(np.arange(cutoff), np.arange(cutoff)).reshape(-1)
        keep = np.flatnonzero(total < cutoff - 2)
    else:
        keep = np.arange(cutoff - 2)
    d = (lhs - rhs)[np.ix_(keep, keep)]
    return float(np.max(np.abs(d))) if d.size else 0.0


def _comm(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def _mpow(m: np.ndarray, k: int) -> np.ndarray:
    return np.linalg.matrix_power(m, k)


def _exp_series(m: np.ndarray, terms: int = 200) -> np.ndarray:
    """exp of a nilpotent or small matrix by direct summation."""
    out = np.eye(m.shape[0], dtype=complex)
    term = out.copy()
    for k in range(1, terms + 1):
        term = term @ m / k
        if not np.any(term):
            break
        out = out + term
    return out


def _x_p_n(c, power=3, **_):
    x, p = quadratures(c)
    return _comm(x, _mpow(p, power)), 1j * power * _mpow(p, power - 1), 1


def _xn_p(c, power=3, **_):
    x, p = quadratures(c)
    return _comm(_mpow(x, power), p), 1j * power * _mpow(x, power - 1), 1


def _n_adag(c, **_):
    _, ad, n = ladder_ops(c)
    return _comm(n, ad), ad, 1


def _n_a(c, **_):
    a, _, n = ladder_ops(c)
    return _comm(n, a), -a, 1


def _a_adag_n(c, power=3, **_):
    a, ad, _ = ladder_ops(c)
    return _comm(a, _mpow(ad, power)), power * _mpow(ad, power - 1), 1


def _adag_a_n(c, power=3, **_):
    a, ad, _ = ladder_ops(c)
    return _comm(ad, _mpow(a, power)), -power * _mpow(a, power - 1), 1


def _a_q_n(c, power=2, **_):
    a, _, n = ladder_ops(c)
    return _comm(_mpow(a, power), n), power * _mpow(a, power), 1


def _a_exp_adag(c, alpha=0.3, **_):
    a, ad, _ = ladder_ops(c)
    e = _exp_series(alpha * ad)
    return _comm(a, e), alpha * e, 1


def _rotation_conjugation(c, theta=0.7, **_):
    _, ad, _ = ladder_ops(c)
    r = rotation(theta, c)
    return r @ ad @ r.conj().T, np.exp(1j * theta) * ad, 1


def _rotation_commute(c, theta=0.7, **_):
    a, _, _ = ladder_ops(c)
    u = rotation(-theta, c)
    return a @ u, np.exp(-1j * theta) * u @ a, 1


def _k_plus_k_minus(c, **_):
    a, b = two_mode_ladders(c)
    kp, km = a.conj().T @ b.conj().T, b @ a
    k3 = 0.5 * (a.conj().T @ a + b.conj().T @ b + np.eye(c * c))
    return _comm(kp, km), -2 * k3, 2


def _k_plus_l_plus(c, **_):
    a, b = two_mode_ladders(c)
    kp, lp = a.conj().T @ b.conj().T, a.conj().T @ b
    return _comm(kp, lp), -a.conj().T @ a.conj().T, 2


def _k_minus_l_plus(c, **_):
    a, b = two_mode_ladders(c)
    km, lp = b @ a, a.conj().T @ b
    return _comm(km, lp), b @ b, 2


def _displacement_bch(c, alpha=0.5, **_):
    a, ad, _ = ladder_ops(c)
    rhs = math.exp(-0.5 * abs(alpha) ** 2) * _exp_series(alpha * ad) @ _exp_series(-np.conj(alpha) * a)
    return displacement(alpha, c), rhs, 1


def _displacement_x(c, alpha=0.4 + 0.3j, **_):
    x, p = quadratures(c)
    d = displacement(alpha, c)
    return d.conj().T @ x @ d, x + math.sqrt(2) * np.real(alpha) * np.eye(c), 1


def _shift_exp(c, alpha=0.3, **_):
    a, ad, _ = ladder_ops(c)
    return _exp_series(-alpha * ad) @ a @ _exp_series(alpha * ad), a + alpha * np.eye(c), 1


def _squeeze_x(c, r=0.1, **_):
    x, _ = quadratures(c)
    s = squeeze(r, 0.0, c)
    return s.conj().T @ x @ s, math.exp(-r) * x, 1


def _beamsplitter_conj(c, theta=math.pi / 4, **_):
    a, b = two_mode_ladders(c)
    u = beamsplitter(theta, 0.0, c)
    return u @ a @ u.conj().T, math.cos(theta) * a + math.sin(theta) * b, 2


_IDENTITIES = {
    "x_p_n": (_x_p_n, "algebraic", 1),
    "xn_p": (_xn_p, "algebraic", 1),
    "n_adag": (_n_adag, "algebraic", 1),
    "n_a": (_n_a, "algebraic", 1),
    "a_adag_n": (_a_adag_n, "algebraic", 1),
    "adag_a_n": (_adag_a_n, "algebraic", 1),
    "a_q_n": (_a_q_n, "algebraic", 1),
    "k_plus_k_minus": (_k_plus_k_minus, "algebraic", 2),
    "k_plus_l_plus": (_k_plus_l_plus, "algebraic", 2),
    "k_minus_l_plus": (_k_minus_l_plus, "algebraic", 2),
    "a_exp_adag": (_a_exp_adag, "exponential", 1),
    "rotation_conjugation": (_rotation_conjugation, "exponential", 1),
    "rotation_commute": (_rotation_commute, "exponential", 1),
    "displacement_bch": (_displacement_bch, "exponential", 1),
    "displacement_x": (_displacement_x, "exponential", 1),
    "shift_exp": (_shift_exp, "exponential", 1),
    "squeeze_x": (_squeeze_x, "exponential", 1),
    "beamsplitter": (_beamsplitter_conj, "exponential", 2),
}

IDENTITY_NAMES = tuple(_IDENTITIES)
IDENTITY_TOLERANCE = {"algebraic": 1e-8, "exponential": 1e-5}


def identity_kind(name: str) -> str:
    try:
        return _IDENTITIES[name][1]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {name!r}; choose from {sorted(_IDENTITIES)}") from None


def verify_commutator_identity(name: str, cutoff: int = 20, **params) -> float:
    """Interior-block defect of a named operator identity.

    Single-mode identities are evaluated on a padded space of ``2·cutoff``
    levels before the interior block is compared.  A truncated exponential
    is wrong well below the top level, and so is a high power of x or p
    (each factor reaches one level further into the corrupted corner).
    The two-mode identities are quadratic or number conserving and are
    exact on the interior as they stand.

    Extra keyword arguments (``power``, ``alpha``, ``theta``, ``r``) override
    the default parameters of identities that take them.
    """
    kind = identity_kind(name)
    cutoff = _check_cutoff(cutoff, 8)
    fn, _, modes = _IDENTITIES[name]
    work = 2 * cutoff if modes == 1 else cutoff
    lhs, rhs, _ = fn(work, **params)
    return interior_defect(lhs, rhs, cutoff, modes)
