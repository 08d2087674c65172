"""qclab: a dense statevector toolkit for textbook quantum computing.

Subpackages and modules:

* :mod:`qclab.core`, :mod:`qclab.pauli`: linear-algebra helpers and Pauli strings
* :mod:`qclab.circuit`: gates, circuits, simulation and sampling
* :mod:`qclab.entangle`: reduced states, entropies, concurrence
* :mod:`qclab.algorithms`: Deutsch-Jozsa through Shor
* :mod:`qclab.hamsim`: product formulas and Pauli-evolution circuits
* :mod:`qclab.vqe`: model Hamiltonians and the variational loop
* :mod:`qclab.qec`: small stabilizer codes
* :mod:`qclab.cvfock`: bosonic modes at finite Fock cutoff
"""

__version__ = "0.1.0"

from .circuit import Circuit, Gate, MeasurementRecord, gate_matrix, measure, measure_all, simulate
from .errors import QclabError
from .pauli import PauliSum, PauliTerm, pauli_decompose

__all__ = [
    "__version__",
    "Circuit",
    "Gate",
    "MeasurementRecord",
    "PauliSum",
    "PauliTerm",
    "QclabError",
    "gate_matrix",
    "measure",
    "measure_all",
    "pauli_decompose",
    "simulate",
]
