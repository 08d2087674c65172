"""Small textbook circuits: entangled-state preparation, the full adder and
phase kickback."""

from __future__ import annotations

import math

import numpy as np

from ..circuit import Circuit, probabilities, simulate, zero_state
from ..errors import BadBitstring


def bell_circuit() -> Circuit:
    """H on qubit 0 then CNOT 0→1, giving (|00⟩+|11⟩)/√2."""
    return Circuit(2).h(0).cx(0, 1)


def ghz_circuit(n: int) -> Circuit:
    c = Circuit(n).h(0)
    for q in range(1, n):
        c.cx(0, q)
    return c


def w_state_circuit(n: int) -> Circuit:
    """Equal superposition of all single-excitation kets.

    Starts from qubit 0 excited and walks the excitation up the register:
    a controlled-Ry leaves amplitude 1/√n behind on qubit k and a CNOT hands
    the rest to qubit k+1.
    """
    c = Circuit(n).x(0)
    for k in range(n - 1):
        theta = 2.0 * math.acos(math.sqrt(1.0 / (n - k)))
        c.append("ry", k + 1, (theta,), controls=(k,))
        c.cx(k + 1, k)
    return c


# Full adder wiring: A, B, carry-in and the scratch line Z.
ADDER_A, ADDER_B, ADDER_CIN, ADDER_Z = 0, 1, 2, 3


def full_adder_circuit() -> Circuit:
    """Toffoli(A,B→Z); CNOT(A→B); Toffoli(B,Cin→Z); CNOT(B→Cin); CNOT(A→B).

    Afterwards the carry-in line holds the sum bit and Z holds carry-out.
    """
    a, b, cin, z = ADDER_A, ADDER_B, ADDER_CIN, ADDER_Z
    return Circuit(4).ccx(a, b, z).cx(a, b).ccx(b, cin, z).cx(b, cin).cx(a, b)


def full_adder(a: int, b: int, carry_in: int) -> tuple[int, int]:
    for v in (a, b, carry_in):
        if v not in (0, 1):
            raise BadBitstring(f"adder inputs must be bits, got {v!r}")
    psi = zero_state(4)
    psi[0] = 0.0
    psi[(a << ADDER_A) | (b << ADDER_B) | (carry_in << ADDER_CIN)] = 1.0
    out = simulate(full_adder_circuit(), psi)
    probs = probabilities(out)
    k = int(np.argmax(probs))
    if abs(probs[k] - 1.0) > 1e-12:
        raise RuntimeError("adder output is not a basis state")
    return (k >> ADDER_CIN) & 1, (k >> ADDER_Z) & 1


def full_adder_table() -> list[tuple[int, int, int, int, int]]:
    """Rows ``(a, b, cin, sum, cout)`` for all eight inputs."""
    rows = []
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                rows.append((a, b, c) + full_adder(a, b, c))
    return rows


def phase_kickback_circuit(phi: float) -> Circuit:
    """Control on qubit 1 (printed left), eigenstate |1⟩ of P(φ) on qubit 0."""
    return Circuit(2).x(0).h(1).cp(phi, 1, 0)


def phase_kickback(phi: float) -> np.ndarray:
    return simulate(phase_kickback_circuit(phi))
