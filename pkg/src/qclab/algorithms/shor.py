"""Shor factoring with classical or phase-estimation order finding.

The quantum route builds the modular-multiplication permutation
``U_a|y⟩ = |a·y mod N⟩`` on ``ceil(log2 N)`` work qubits, runs phase
estimation from the work state ``|1⟩`` and turns sampled phases into orders
through continued-fraction convergents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..circuit import Circuit, make_rng, measure, simulate
from ..errors import Exhausted, IsEven, IsPrime, IsPrimePower, NotCoprime, UnsupportedSize
from .qft import phase_estimation_circuit

MAX_ATTEMPTS = 32
QUANTUM_MAX_N = 15
CLASSICAL_MAX_N = 10**6


def euclid_gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def perfect_power(n: int) -> tuple[int, int] | None:
    """Return ``(base, k)`` with ``base**k == n`` and ``k >= 2``, smallest base."""
    for k in range(n.bit_length(), 1, -1):
        base = round(n ** (1.0 / k))
        for b in (base - 1, base, base + 1):
            if b >= 2 and b**k == n:
                return b, k
    return None


def order_classical(a: int, N: int) -> int:
    if euclid_gcd(a, N) != 1:
        raise NotCoprime(f"gcd({a}, {N}) != 1")
    r, x = 1, a % N
    while x != 1 % N:
        x = (x * a) % N
        r += 1
    return r


def modmul_matrix(a: int, N: int, width: int) -> np.ndarray:
    dim = 2**width
    m = np.zeros((dim, dim), dtype=complex)
    for y in range(dim):
        m[(a * y) % N if y < N else y, y] = 1.0
    return m


def convergents(frac: Fraction):
    """Continued-fraction convergents of a non-negative rational."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    x = frac
    while True:
        a = math.floor(x)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield Fraction(p1, q1)
        rem = x - a
        if rem == 0:
            return
        x = 1 / rem


@dataclass
class QuantumOrderResult:
    r: int | None
    counting: int
    histogram: dict[str, int]
    candidates: list[int]
    circuit: Circuit = field(repr=False)


def order_quantum(a: int, N: int, counting: int | None = None, shots: int = 64, seed: int = 0) -> QuantumOrderResult:
    if N > QUANTUM_MAX_N:
        raise UnsupportedSize(f"quantum order finding is limited to N <= {QUANTUM_MAX_N}")
    if euclid_gcd(a, N) != 1:
        raise NotCoprime(f"gcd({a}, {N}) != 1")
    width = max(1, (N - 1).bit_length())
    m = counting if counting is not None else 2 * width
    prep = Circuit(width).x(0)
    circ = phase_estimation_circuit(m, modmul_matrix(a % N, N, width), prep)
    state = simulate(circ)
    rec = measure(state, list(range(m)), shots, seed)
    found: set[int] = set()
    for bits in sorted(rec.counts, key=lambda s: (-rec.counts[s], s)):
        k = int(bits, 2)
        for cf in convergents(Fraction(k, 2**m)):
            d = cf.denominator
            if d > 2**m:
                break
            for mult in range(1, N):
                r = d * mult
                if r >= N:
                    break
                if pow(a, r, N) == 1 % N:
                    found.add(r)
                    break
    r = min(found) if found else None
    return QuantumOrderResult(r, m, rec.counts, sorted(found), circ)


def order_find(a: int, N: int, method: str = "classical", **kw) -> int:
    """Smallest r > 0 with a^r ≡ 1 (mod N)."""
    if method == "classical":
        return order_classical(a, N)
    res = order_quantum(a, N, **kw)
    if res.r is None:
        raise Exhausted(f"phase estimation found no order for a={a}, N={N}")
    return res.r


@dataclass
class ShorResult:
    N: int
    factors: tuple[int, int]
    route: str
    a: int | None = None
    r: int | None = None
    attempts: int = 0
    history: list[dict] = field(default_factory=list)


def shor_factor(N: int, seed: int = 0, a: int | None = None, method: str = "classical", counting: int | None = None, strict: bool = False) -> ShorResult:
    """Factor ``N`` following the usual five steps.

    1. even N gives the factor 2;
    2. a perfect power ``b^k`` gives the factor b;
    3. pick a random ``1 < a < N``; a shared factor is returned directly;
    4. find the order r of a;
    5. for even r with ``a^{r/2} ≢ −1`` return ``gcd(a^{r/2} ± 1, N)``,
       otherwise go back to step 3 (at most 32 times).

    Steps 1 and 2 return their factor with ``route`` set to ``"even"`` or
    ``"prime-power"``; with ``strict=True`` they raise ``IsEven`` or
    ``IsPrimePower`` instead, carrying the factor in the message.
    """
    N = int(N)
    if N < 4 or is_prime(N):
        raise IsPrime(f"{N} is prime or too small to factor")
    if N % 2 == 0:
        if strict:
            raise IsEven(f"{N} is even; factor 2")
        return ShorResult(N, (2, N // 2), "even")
    pp = perfect_power(N)
    if pp is not None:
        b = pp[0]
        if strict:
            raise IsPrimePower(f"{N} = {b}^{pp[1]}; factor {b}")
        return ShorResult(N, (b, N // b), "prime-power")
    if method == "quantum" and N > QUANTUM_MAX_N:
        raise UnsupportedSize(f"quantum path needs N <= {QUANTUM_MAX_N}")
    if N > CLASSICAL_MAX_N:
        raise UnsupportedSize(f"N must be <= {CLASSICAL_MAX_N}")

    rng = make_rng(seed)
    history: list[dict] = []
    for attempt in range(1, MAX_ATTEMPTS + 1):
        cand = a if (attempt == 1 and a is not None) else int(rng.integers(2, N))
        g = euclid_gcd(cand, N)
        if g > 1:
            history.append({"a": cand, "gcd": g})
            return ShorResult(N, tuple(sorted((g, N // g))), "gcd", cand, None, attempt, history)
        if method == "quantum":
            r = order_quantum(cand, N, counting=counting, seed=seed + attempt).r
        else:
            r = order_classical(cand, N)
        entry = {"a": cand, "r": r}
        history.append(entry)
        if r is None or r % 2:
            entry["retry"] = "odd or missing order"
            continue
        half = pow(cand, r // 2, N)
        if half == N - 1:
            entry["retry"] = "a^(r/2) = -1 mod N"
            continue
        p, q = euclid_gcd(half - 1, N), euclid_gcd(half + 1, N)
        if 1 < p < N:
            return ShorResult(N, tuple(sorted((p, N // p))), "order-finding", cand, r, attempt, history)
        if 1 < q < N:
            return ShorResult(N, tuple(sorted((q, N // q))), "order-finding", cand, r, attempt, history)
        entry["retry"] = "trivial gcd"
    raise Exhausted(f"no factor of {N} after {MAX_ATTEMPTS} attempts")
