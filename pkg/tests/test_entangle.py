import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qclab.algorithms import w_state_circuit
from qclab.circuit import simulate
from qclab.entangle import (
    binary_entropy,
    concurrence,
    density_from_state,
    entanglement_of_formation,
    purity,
    reduced_density,
    relative_entropy,
    schmidt,
    state_fidelity,
    von_neumann_entropy,
)
from qclab.errors import BadPartition, NotHermitian, NotNormalized, WrongSize

from .conftest import random_state

SQ = 1 / math.sqrt(2)
BELL = np.array([SQ, 0, 0, SQ])
KET0, KET1 = np.array([1, 0]), np.array([0, 1])


def _entangled(alpha):
    return np.array([math.cos(alpha), 0, 0, math.sin(alpha)])


def test_density_examples():
    assert np.array_equal(density_from_state(KET0), [[1, 0], [0, 0]])
    minus = np.array([SQ, -SQ])
    assert np.allclose(density_from_state(minus), 0.5 * np.array([[1, -1], [-1, 1]]))
    rho = density_from_state(BELL)
    assert np.allclose(rho[[0, 0, 3, 3], [0, 3, 0, 3]], 0.5)
    assert np.isclose(np.abs(rho).sum(), 2.0)


def test_purity_examples():
    assert purity(reduced_density(BELL, [0])) == pytest.approx(0.5)
    assert purity(density_from_state(random_state(np.random.default_rng(0), 3))) == pytest.approx(1.0)
    product = 0.5 * np.array([1, -1, 1, -1])  # (|00>+|10>-|01>-|11>)/2
    assert purity(reduced_density(product, [1])) == pytest.approx(1.0)
    assert purity(reduced_density(product, [0])) == pytest.approx(1.0)


def test_entropy_examples():
    assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(math.log(2))
    assert von_neumann_entropy(np.eye(2) / 2, log_base=2) == pytest.approx(1.0)
    assert von_neumann_entropy(density_from_state(BELL)) == pytest.approx(0.0, abs=1e-12)
    s = von_neumann_entropy(reduced_density(_entangled(math.pi / 6), [0]))
    assert s == pytest.approx(-(0.75 * math.log(0.75) + 0.25 * math.log(0.25)), abs=1e-12)
    assert s == pytest.approx(0.562335, abs=1e-6)


def test_entropy_of_qutrit_matrix():
    # Hermitian completion of the printed 3x3 matrix (its [3,1] entry is 1/6)
    rho = np.array([[5, 2, 2], [2, 2, 2], [2, 2, 5]]) / 12
    assert np.trace(rho) == pytest.approx(1.0)
    ev = np.linalg.eigvalsh(rho)
    assert ev.sum() == pytest.approx(1.0) and ev.min() > -1e-12
    ev = ev[ev > 1e-12]
    assert von_neumann_entropy(rho) == pytest.approx(float(-(ev * np.log(ev)).sum()), abs=1e-12)
    assert 0 < von_neumann_entropy(rho) < math.log(3)


def test_entropy_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        von_neumann_entropy(np.array([[0.5, 1], [0, 0.5]]))


def test_relative_entropy_examples():
    rho = density_from_state(np.array([0.6, 0.8]))
    assert relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-12)
    zero = density_from_state(KET0)
    assert relative_entropy(zero, np.eye(2) / 2) == pytest.approx(math.log(2))
    assert relative_entropy(zero, density_from_state(KET1)) == math.inf


def test_schmidt_examples():
    bell = schmidt(BELL, [1])
    assert np.allclose(bell.coefficients, [SQ, SQ])
    assert bell.schmidt_number == 2
    assert schmidt(np.kron([0.6, 0.8], [SQ, SQ]), [0]).schmidt_number == 1
    w = simulate(w_state_circuit(3))
    assert np.allclose(sorted(schmidt(w, [0]).coefficients ** 2, reverse=True), [2 / 3, 1 / 3])
    with pytest.raises(BadPartition):
        schmidt(BELL, [0, 1])
    with pytest.raises(BadPartition):
        schmidt(BELL, [2])


def test_schmidt_reconstructs_state(rng):
    psi = random_state(rng, 4)
    d = schmidt(psi, [3, 1])
    assert abs(np.sum(d.coefficients**2) - 1) < 1e-9
    assert np.allclose(d.left_basis.conj().T @ d.left_basis, np.eye(4), atol=1e-9)
    m = (d.left_basis * d.coefficients) @ d.right_basis.conj().T
    # rebuild in qubit order (3, 1 | 2, 0) and compare
    t = psi.reshape([2] * 4).transpose([0, 2, 1, 3]).reshape(4, 4)
    assert np.allclose(m, t, atol=1e-10)


def test_concurrence_and_eof_examples():
    assert concurrence(BELL) == pytest.approx(1.0)
    assert entanglement_of_formation(BELL) == pytest.approx(1.0)
    prod = np.kron([0.6, 0.8], [SQ, -SQ])
    assert concurrence(prod) == pytest.approx(0.0, abs=1e-12)
    assert entanglement_of_formation(prod) == pytest.approx(0.0, abs=1e-12)
    psi = _entangled(math.pi / 6)
    assert concurrence(psi) == pytest.approx(math.sqrt(3) / 2)
    assert entanglement_of_formation(psi) == pytest.approx(binary_entropy(0.75))
    assert entanglement_of_formation(psi) == pytest.approx(0.811278, abs=1e-6)
    with pytest.raises(WrongSize):
        concurrence(np.array([1, 0]))


def test_fidelity_examples():
    psi = random_state(np.random.default_rng(5), 2)
    assert state_fidelity(psi, psi) == pytest.approx(1.0)
    assert state_fidelity(KET0, KET1) == 0.0
    a = np.zeros(8)
    a[[0b001, 0b101]] = 0.5
    a[[0b011, 0b111]] = -0.5
    ghz = np.zeros(8)
    ghz[[0, 7]] = SQ
    assert state_fidelity(a, ghz) == pytest.approx(0.125)
    with pytest.raises(NotNormalized):
        state_fidelity(np.array([1, 1]), KET0)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_entropy_two_ways_and_purity_bounds(seed):
    psi = random_state(np.random.default_rng(seed), 2)
    rho = reduced_density(psi, [0])
    lam2 = schmidt(psi, [0]).coefficients ** 2
    lam2 = lam2[lam2 > 1e-12]
    assert abs(von_neumann_entropy(rho) + np.sum(lam2 * np.log(lam2))) < 1e-9
    assert 0.5 - 1e-12 <= purity(rho) <= 1 + 1e-9


def test_product_criteria_agree_on_1000_states():
    rng = np.random.default_rng(77)
    for i in range(1000):
        if i % 2:
            psi = np.kron(random_state(rng, 1), random_state(rng, 1))
        else:
            psi = random_state(rng, 2)
        c0 = concurrence(psi) < 1e-9
        s1 = schmidt(psi, [1]).schmidt_number == 1
        p1 = abs(purity(reduced_density(psi, [0])) - 1) < 1e-9
        assert c0 == s1 == p1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_purification_entropies_match(seed):
    # four parties of one qubit each: S(12) = S(34) for a pure state
    psi = random_state(np.random.default_rng(seed), 4)
    s12 = von_neumann_entropy(reduced_density(psi, [0, 1]))
    s34 = von_neumann_entropy(reduced_density(psi, [2, 3]))
    assert abs(s12 - s34) < 1e-8
