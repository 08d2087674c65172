"""Textbook quantum algorithms built on the statevector kernel."""

from .basic import (
    bell_circuit,
    full_adder,
    full_adder_circuit,
    full_adder_table,
    ghz_circuit,
    phase_kickback,
    phase_kickback_circuit,
    w_state_circuit,
)
from .grover import GroverResult, grover, grover_circuit, optimal_iterations, success_probability_analytic
from .oracles import OracleSpec, QueryResult, bernstein_vazirani, deutsch_jozsa, oracle_calls
from .qft import PhaseEstimate, phase_estimation_circuit, qft, qft_matrix, qpe
from .shor import (
    ShorResult,
    convergents,
    euclid_gcd,
    order_classical,
    order_find,
    order_quantum,
    shor_factor,
)

__all__ = [
    "bell_circuit", "full_adder", "full_adder_circuit", "full_adder_table", "ghz_circuit",
    "phase_kickback", "phase_kickback_circuit", "w_state_circuit",
    "GroverResult", "grover", "grover_circuit", "optimal_iterations", "success_probability_analytic",
    "OracleSpec", "QueryResult", "bernstein_vazirani", "deutsch_jozsa", "oracle_calls",
    "PhaseEstimate", "phase_estimation_circuit", "qft", "qft_matrix", "qpe",
    "ShorResult", "convergents", "euclid_gcd", "order_classical", "order_find", "order_quantum", "shor_factor",
]
