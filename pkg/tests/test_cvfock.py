import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qclab.cvfock import (
    CV_GATES,
    IDENTITY_NAMES,
    IDENTITY_TOLERANCE,
    cat_normalization,
    cat_state,
    coherent_amplitudes,
    coherent_overlap,
    coherent_state,
    cubic_phase,
    cv_gate,
    displacement,
    fock_state,
    identity_kind,
    interior_defect,
    kerr,
    ladder_ops,
    quadratures,
    rotation,
    squeezed_state,
    unitarity_defect,
    vacuum,
    verify_commutator_identity,
)
from qclab.errors import BadIndex, TruncationLeakage, UnknownGate, UnknownIdentity


def test_cutoff_two_ladder():
    a, ad, n = ladder_ops(2)
    assert np.array_equal(a, [[0, 1], [0, 0]])
    assert np.array_equal(ad, a.T)
    assert np.array_equal(n, np.diag([0, 1]))


def test_ladder_structure():
    a, _, _ = ladder_ops(12)
    for i in range(12):
        for j in range(12):
            want = math.sqrt(j) if j == i + 1 else 0.0
            assert a[i, j] == pytest.approx(want)


def test_commutator_corner():
    c = 9
    a, ad, _ = ladder_ops(c)
    comm = a @ ad - ad @ a
    assert np.allclose(np.diag(comm), [1] * (c - 1) + [-(c - 1)])
    assert np.allclose(comm - np.diag(np.diag(comm)), 0)


def test_vacuum_position_spread():
    x, p = quadratures(30)
    v = vacuum(30)
    assert v.expect(x @ x).real == pytest.approx(0.5)
    assert v.expect(p @ p).real == pytest.approx(0.5)


def test_gate_examples():
    assert np.allclose(displacement(0, 10), np.eye(10))
    phi = 0.37
    assert np.array_equal(rotation(phi, 8), np.diag(np.exp(1j * phi * np.arange(8))))
    assert np.allclose(cv_gate("rotation", [phi], 8), rotation(phi, 8))


@pytest.mark.parametrize("name", CV_GATES)
def test_every_gate_is_unitary(name):
    params = {"displacement": [0.3 + 0.2j], "squeeze": [0.2, 0.4], "beamsplitter": [0.5, 0.1],
              "two-mode-squeeze": [0.1, 0.3]}.get(name, [0.25])
    u = cv_gate(name, params, 8)
    assert unitarity_defect(u) < 1e-10


def test_gate_errors():
    with pytest.raises(UnknownGate):
        cv_gate("teleport", [1], 8)
    with pytest.raises(BadIndex):
        cv_gate("kerr", [1], 3)
    with pytest.raises(BadIndex):
        cv_gate("squeeze", [1], 8)


def test_beamsplitter_conjugation_interior():
    assert verify_commutator_identity("beamsplitter", cutoff=20) < 1e-6


def test_coherent_examples():
    assert np.allclose(coherent_state(0, 10).amps, vacuum(10).amps)
    assert coherent_amplitudes(1.0, 30)[0] == pytest.approx(math.exp(-0.5))
    assert coherent_amplitudes(1.0, 30)[0] == pytest.approx(0.606531, abs=1e-6)


def test_coherent_is_annihilator_eigenstate():
    a, _, _ = ladder_ops(30)
    alpha = 0.8 - 0.5j
    psi = coherent_state(alpha, 30).amps
    assert np.max(np.abs((a @ psi - alpha * psi)[:28])) < 1e-6


def test_displaced_vacuum_is_coherent():
    psi = displacement(1.0, 40) @ vacuum(40).amps
    assert np.max(np.abs(psi[:30] - coherent_amplitudes(1.0, 30))) < 1e-10


def test_truncation_guard():
    with pytest.raises(TruncationLeakage):
        coherent_state(3.0, 10)
    assert coherent_state(1.0, 30).leakage < 1e-6


def test_cat_parity():
    even = cat_state(1.2, 0.0, 30).amps
    odd = cat_state(1.2, math.pi, 30).amps
    assert np.allclose(even[1::2], 0) and np.linalg.norm(even[0::2]) == pytest.approx(1.0)
    assert np.allclose(odd[0::2], 0) and np.linalg.norm(odd[1::2]) == pytest.approx(1.0)
    with pytest.raises(BadIndex):
        cat_state(0.0, math.pi, 10)


def test_cat_normalization_formula():
    alpha = 0.9
    raw = coherent_amplitudes(alpha, 40) + coherent_amplitudes(-alpha, 40)
    assert 1 / np.linalg.norm(raw) == pytest.approx(cat_normalization(alpha, 0.0), abs=1e-12)


def test_quasi_orthogonality():
    minus, plus = coherent_state(-1.0, 30), coherent_state(1.0, 30)
    assert abs(np.vdot(minus.amps, plus.amps)) == pytest.approx(math.exp(-2), abs=1e-6)
    assert abs(coherent_overlap(-1.0, 1.0)) == pytest.approx(0.135335, abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(
    st.floats(0, 2), st.floats(0, 2 * math.pi), st.floats(0, 2), st.floats(0, 2 * math.pi),
)
def test_coherent_overlap_modulus(ra, pa, rb, pb):
    alpha, beta = ra * np.exp(1j * pa), rb * np.exp(1j * pb)
    got = abs(np.vdot(coherent_state(beta, 30).amps, coherent_state(alpha, 30).amps)) ** 2
    assert abs(got - math.exp(-abs(alpha - beta) ** 2)) < 1e-6
    assert abs(abs(coherent_overlap(beta, alpha)) ** 2 - math.exp(-abs(alpha - beta) ** 2)) < 1e-12


@pytest.mark.parametrize("r", [0.25, 0.5, 0.75, 1.0])
def test_squeezed_vacuum_quadratures(r):
    # Claimed to hold for every r <= 1 at cutoff 40.  At r = 1 the state
    # keeps 3.5e-6 of its weight above the cutoff and <p^2> misses by 3e-4,
    # so that case fails by design of the truncation.
    state = squeezed_state(r, 0.0, 40, max_leakage=1e-5)
    x, p = quadratures(40)
    assert abs(state.expect(x @ x).real - 0.5 * math.exp(-2 * r)) < 1e-4
    assert abs(state.expect(p @ p).real - 0.5 * math.exp(2 * r)) < 1e-4


def test_squeeze_matrix_on_vacuum_matches_analytic():
    r = 0.3
    from qclab.cvfock import squeezed_vacuum_amplitudes, squeeze

    psi = squeeze(r, 0.0, 60) @ vacuum(60).amps
    assert np.max(np.abs(psi[:30] - squeezed_vacuum_amplitudes(r, 0.0, 30))) < 1e-10


def test_displacement_composition():
    big, keep = 60, 20
    for alpha, beta in ((0.3 + 0.1j, -0.2 + 0.4j), (0.5, 0.5j), (-0.4j, 0.7)):
        lhs = displacement(alpha, big) @ displacement(beta, big)
        rhs = np.exp(1j * np.imag(alpha * np.conj(beta))) * displacement(alpha + beta, big)
        assert np.max(np.abs((lhs - rhs)[:keep, :keep])) < 1e-6


def test_kerr_and_rotation_conserve_parity():
    parity = np.diag((-1.0) ** np.arange(16))
    for u in (kerr(0.3, 16), rotation(1.1, 16)):
        assert np.array_equal(u @ parity, parity @ u)


def test_cubic_phase_is_unitary_and_diagonal_in_x():
    x, _ = quadratures(20)
    for gamma in (0.05, 0.2, 1.0):
        u = cubic_phase(gamma, 20)
        assert unitarity_defect(u) < 1e-10
        assert np.max(np.abs(u @ x - x @ u)) < 1e-9


@pytest.mark.parametrize("name", IDENTITY_NAMES)
@pytest.mark.parametrize("cutoff", [8, 20, 30])
def test_identity_defects(name, cutoff):
    defect = verify_commutator_identity(name, cutoff=cutoff)
    assert defect < IDENTITY_TOLERANCE[identity_kind(name)]


def test_identity_examples():
    assert verify_commutator_identity("n_adag", cutoff=20) < 1e-12
    assert verify_commutator_identity("displacement_bch", cutoff=25, alpha=0.5) < 1e-6
    assert verify_commutator_identity("k_plus_k_minus", cutoff=12) < 1e-10


def test_identity_parameter_overrides():
    assert verify_commutator_identity("x_p_n", cutoff=20, power=5) < 1e-8
    assert verify_commutator_identity("rotation_conjugation", cutoff=20, theta=2.1) < 1e-5


def test_identity_errors():
    with pytest.raises(UnknownIdentity):
        verify_commutator_identity("jacobi")
    with pytest.raises(BadIndex):
        verify_commutator_identity("n_a", cutoff=4)


def test_interior_defect_ignores_top_levels():
    a, ad, _ = ladder_ops(10)
    comm = a @ ad - ad @ a
    assert interior_defect(comm, np.eye(10), 10) < 1e-14
    assert np.max(np.abs(comm - np.eye(10))) > 1


def test_fock_state_bounds():
    assert fock_state(3, 5).photon_number() == 3
    with pytest.raises(BadIndex):
        fock_state(5, 5)
