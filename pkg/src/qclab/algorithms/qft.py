"""Quantum Fourier transform and phase estimation.

Sign convention: the forward transform maps ``|x⟩`` to
``2^{-n/2} Σ_y e^{+2πi x y / 2^n} |y⟩`` (little-endian integers).  Written
with ``γ = e^{-2πi/N}`` the same matrix has entries ``γ^{-jk}/√N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..circuit import Circuit, MeasurementRecord, custom_gate, measure, probabilities, simulate


def qft_matrix(n: int, inverse: bool = False) -> np.ndarray:
    dim = 2**n
    j = np.arange(dim)
    sign = -1.0 if inverse else 1.0
    return np.exp(sign * 2j * math.pi * np.outer(j, j) / dim) / math.sqrt(dim)


def qft(n: int, inverse: bool = False, qubits: Sequence[int] | None = None, width: int | None = None) -> Circuit:
    """H + controlled-phase ladder + reversal swaps on ``qubits``.

    ``qubits[i]`` carries bit ``i`` of the register value; by default the
    register is qubits ``0..n-1`` of an ``n``-qubit circuit.
    """
    qs = list(range(n)) if qubits is None else list(qubits)
    c = Circuit(width if width is not None else max(qs) + 1)
    for j in range(n - 1, -1, -1):
        c.h(qs[j])
        for m in range(j - 1, -1, -1):
            c.cp(2.0 * math.pi / 2 ** (j - m + 1), qs[m], qs[j])
    for i in range(n // 2):
        c.swap(qs[i], qs[n - 1 - i])
    return c.inverse() if inverse else c


@dataclass
class PhaseEstimate:
    counting_qubits: int
    histogram: MeasurementRecord
    best: float
    distribution: np.ndarray
    circuit: Circuit


def phase_estimation_circuit(counting: int, unitary: np.ndarray, prepare: Circuit | None = None) -> Circuit:
    """Counting register on qubits ``0..m-1``; target register above it.

    ``prepare`` (acting on the target register only, its qubit 0 first)
    loads the eigenstate.  Qubit ``j`` controls ``U^{2^j}``.
    """
    u = np.asarray(unitary, dtype=complex)
    w = u.shape[0].bit_length() - 1
    m = counting
    c = Circuit(m + w)
    if prepare is not None:
        c.extend(prepare, [m + q for q in range(prepare.n_qubits)])
    for j in range(m):
        c.h(j)
    targets = list(range(m + w - 1, m - 1, -1))
    power = u.copy()
    for j in range(m):
        c.append(custom_gate(power, f"u^{2**j}"), targets, controls=(j,))
        power = power @ power
    c.extend(qft(m, inverse=True), range(m))
    return c


def qpe(theta: float, counting: int, shots: int = 1024, seed: int = 0) -> PhaseEstimate:
    """Estimate θ for ``P(2πθ)|1⟩ = e^{2πiθ}|1⟩``."""
    if not 0.0 <= theta < 1.0:
        raise ValueError("theta must lie in [0, 1)")
    u = np.diag([1.0, np.exp(2j * math.pi * theta)])
    c = phase_estimation_circuit(counting, u, Circuit(1).x(0))
    return _finish(c, counting, shots, seed)


def _finish(c: Circuit, counting: int, shots: int, seed: int) -> PhaseEstimate:
    state = simulate(c)
    reg = list(range(counting))
    dist = probabilities(state, reg)
    rec = measure(state, reg, shots, seed)
    best = int(rec.most_common(), 2) / 2**counting
    return PhaseEstimate(counting, rec, best, dist, c)
