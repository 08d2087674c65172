"""Grover search with a diagonal phase oracle and the H·X·MCZ·X·H diffuser."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..circuit import Circuit, MeasurementRecord, custom_gate, measure_all, probabilities, simulate
from ..errors import BadBitstring
from .oracles import OracleSpec


def optimal_iterations(n: int, n_marked: int) -> int:
    """Iteration count closest to a quarter turn, never below one.

    With ``sin θ = √(M/N)`` the success amplitude is ``sin((2k+1)θ)``; the
    best integer is ``round(π/(4θ) − ½)``.
    """
    theta = math.asin(math.sqrt(n_marked / 2**n))
    return max(1, int(round(math.pi / (4.0 * theta) - 0.5)))


def success_probability_analytic(n: int, n_marked: int, k: int) -> float:
    theta = math.asin(math.sqrt(n_marked / 2**n))
    return math.sin((2 * k + 1) * theta) ** 2


def _validate(n: int, marked: Sequence[str]) -> tuple[str, ...]:
    if n < 1:
        raise BadBitstring("n must be >= 1")
    marked = tuple(dict.fromkeys(marked))
    if not marked:
        raise BadBitstring("marked set is empty")
    for m in marked:
        if not isinstance(m, str) or len(m) != n or any(c not in "01" for c in m):
            raise BadBitstring(f"{m!r} is not a {n}-bit string")
    return marked


def diffuser(circ: Circuit, n: int) -> Circuit:
    qs = list(range(n))
    for q in qs:
        circ.h(q)
    for q in qs:
        circ.x(q)
    circ.mcz(qs)
    for q in qs:
        circ.x(q)
    for q in qs:
        circ.h(q)
    return circ


def grover_circuit(n: int, marked: Sequence[str], iterations: int) -> Circuit:
    marked = _validate(n, marked)
    oracle = custom_gate(OracleSpec("marked-set", n, marked=marked).phase_oracle_matrix(), "oracle")
    c = Circuit(n)
    for q in range(n):
        c.h(q)
    for _ in range(iterations):
        c.append(oracle, list(range(n - 1, -1, -1)))
        diffuser(c, n)
    return c


@dataclass
class GroverResult:
    record: MeasurementRecord
    iterations: int
    success_probability: float
    probabilities: dict[str, float]
    circuit: Circuit


def grover(n: int, marked: Sequence[str], iterations: int | str = "auto", shots: int = 1024, seed: int = 0) -> GroverResult:
    marked = _validate(n, marked)
    k = optimal_iterations(n, len(marked)) if iterations == "auto" else int(iterations)
    c = grover_circuit(n, marked, k)
    state = simulate(c)
    probs = probabilities(state)
    table = {format(i, f"0{n}b"): float(p) for i, p in enumerate(probs)}
    success = float(sum(table[m] for m in marked))
    return GroverResult(measure_all(state, shots, seed), k, success, table, c)
