import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qclab.errors import BadFormat, BadIndex, UncorrectableSyndrome
from qclab.pauli import pauli_matrix
from qclab.qec import (
    CODES,
    apply_error,
    apply_pauli_label,
    bitflip_ancilla_syndrome,
    decode,
    encode,
    failure_probability_bitflip,
    generators_commute,
    hamming_bound,
    knill_laflamme_check,
    logical_basis,
    monte_carlo_bitflip,
    parse_error,
    random_su2,
    recover,
    run_trial,
    stabilizers,
    syndrome,
    syndrome_table,
    verify_stabilizers,
)

SQ = 1 / math.sqrt(2)


def _ket(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1
    return v


def test_encoding_examples():
    assert np.allclose(encode("bitflip", [0, 1]), _ket("111"))
    plus3 = np.full(8, 1 / math.sqrt(8))
    assert np.allclose(encode("phaseflip", [1, 0]), plus3)
    s = encode("shor9", [SQ, SQ])
    zero, one = logical_basis("shor9")
    assert np.allclose(s, SQ * (zero + one))
    assert abs(np.linalg.norm(s) - 1) < 1e-12


def test_shor9_logical_zero_is_three_ghz_blocks():
    ghz = (_ket("000") + _ket("111")) / math.sqrt(2)
    assert np.allclose(logical_basis("shor9")[0], np.kron(np.kron(ghz, ghz), ghz))


@pytest.mark.parametrize("name", sorted(CODES))
def test_clean_round_trip(name, rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    logical, leak = decode(name, encode(name, v))
    assert leak < 1e-12
    assert abs(abs(np.vdot(v, logical)) ** 2 - 1) < 1e-9


def test_bitflip_syndrome_table_rows():
    psi = encode("bitflip", [0.6, 0.8])
    assert syndrome("bitflip", psi) == (1, 1)
    assert syndrome("bitflip", apply_error("bitflip", psi, parse_error("X@0"))) == (-1, 1)
    assert syndrome("bitflip", apply_error("bitflip", psi, parse_error("X@1"))) == (-1, -1)
    assert syndrome("bitflip", apply_error("bitflip", psi, parse_error("X@2"))) == (1, -1)


def test_ancilla_readout_matches_expectations():
    psi = encode("bitflip", [0.6, 0.8j])
    for q in range(3):
        bad = apply_error("bitflip", psi, parse_error(f"X@{q}"))
        assert bitflip_ancilla_syndrome(bad) == syndrome("bitflip", bad)
    assert bitflip_ancilla_syndrome(psi) == (1, 1)


def test_shor9_z4_syndrome_is_shared_only_within_its_block():
    ref = encode("shor9", [1, 0])
    syn = {}
    for q in range(9):
        for p in "XYZ":
            syn[(p, q)] = syndrome("shor9", apply_error("shor9", ref, parse_error(f"{p}@{q}")))
    z4 = syn[("Z", 4)]
    assert z4 != (1,) * 8
    same = {k for k, v in syn.items() if v == z4}
    assert same == {("Z", 3), ("Z", 4), ("Z", 5)}


def test_shor9_table_is_degenerate_but_complete():
    table = syndrome_table("shor9")
    assert len(table) == 22  # 1 + 9 X-classes + 3 Z-classes + 9 Y-classes
    ref = encode("shor9", [0.6, 0.8])
    for q, p in itertools.product(range(9), "XYZ"):
        bad = apply_error("shor9", ref, parse_error(f"{p}@{q}"))
        fixed = recover("shor9", bad)
        assert abs(abs(np.vdot(ref, fixed)) - 1) < 1e-10


def test_bitflip_recovers_x2_exactly():
    psi = encode("bitflip", [0.6, 0.8])
    fixed = recover("bitflip", apply_error("bitflip", psi, parse_error("X@2")))
    assert np.allclose(fixed, psi)


def test_double_flip_is_a_logical_error():
    psi = encode("bitflip", [1, 0])
    bad = apply_pauli_label(psi, "IXX")
    logical, _ = decode("bitflip", recover("bitflip", bad))
    assert abs(logical[0]) ** 2 == pytest.approx(0.0, abs=1e-12)


def test_shor9_random_unitary_on_qubit_7():
    v = np.array([0.6, 0.8j])
    trial = run_trial("shor9", v, "U@7:123")
    assert trial.fidelity >= 1 - 1e-8
    assert len(trial.syndromes) > 1  # a generic error spreads over several sectors
    assert sum(trial.probabilities) == pytest.approx(1.0)


@pytest.mark.parametrize("name,kinds", [("bitflip", "X"), ("phaseflip", "Z"), ("shor9", "XYZ")])
def test_designed_error_sweep(name, kinds, rng):
    for _ in range(3):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        for q in range(CODES[name].n):
            for k in kinds:
                trial = run_trial(name, v, f"{k}@{q}")
                assert trial.fidelity >= 1 - 1e-8
                # amplitudes themselves come back, not just the basis populations
                assert np.allclose(trial.recovered, v, atol=1e-8)


def test_shor9_fifty_random_unitaries():
    rng = np.random.default_rng(50)
    for i in range(50):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        q = int(rng.integers(9))
        trial = run_trial("shor9", v / np.linalg.norm(v), f"U@{q}:{i}")
        assert trial.fidelity >= 1 - 1e-8


def test_repetition_codes_miss_the_other_error_type():
    v = np.array([SQ, SQ])
    assert run_trial("bitflip", v, "Z@0").fidelity < 0.5
    assert run_trial("phaseflip", v, "X@1").fidelity < 0.5


def test_failure_probability():
    assert failure_probability_bitflip(0.0) == 0.0
    assert failure_probability_bitflip(0.1) == pytest.approx(0.028)
    with pytest.raises(ValueError):
        failure_probability_bitflip(1.5)


def test_monte_carlo_rate():
    rate = monte_carlo_bitflip(0.1, 100_000, seed=4)
    assert abs(rate - 0.028) < 0.002
    assert monte_carlo_bitflip(0.1, 1000, seed=4) == monte_carlo_bitflip(0.1, 1000, seed=4)


def test_pattern_failures_follow_majority():
    from qclab.qec import bitflip_pattern_fails

    for pattern in range(8):
        assert bitflip_pattern_fails(pattern) == (bin(pattern).count("1") >= 2)


def test_verify_stabilizer_examples():
    bell = np.array([SQ, 0, 0, SQ])
    from qclab.pauli import PauliTerm

    group = [PauliTerm(1.0, "II"), PauliTerm(1.0, "XX"), PauliTerm(-1.0, "YY"), PauliTerm(1.0, "ZZ")]
    assert np.allclose(verify_stabilizers(group, bell), 1.0)
    zero_l = logical_basis("shor9")[0]
    assert np.allclose(verify_stabilizers(stabilizers("shor9"), zero_l), 1.0)
    assert verify_stabilizers(["ZZ"], _ket("01")) == [pytest.approx(-1.0)]


def test_syndrome_rejects_superposed_sectors():
    psi = encode("shor9", [1, 0])
    with pytest.raises(UncorrectableSyndrome):
        syndrome("shor9", apply_error("shor9", psi, parse_error("U@3:1")))


def test_hamming_examples():
    assert hamming_bound(5, 1, 1) == (32, 32, True)
    assert hamming_bound(9, 1, 1) == (56, 512, False)
    assert hamming_bound(0, 0, 0) == (1, 1, True)
    assert hamming_bound(3, 0, 0) == (1, 8, False)


def test_knill_laflamme_examples():
    assert knill_laflamme_check("bitflip", ["I", "X@0", "X@1", "X@2"])
    assert knill_laflamme_check("phaseflip", ["I", "Z@0", "Z@1", "Z@2"])
    assert not knill_laflamme_check("bitflip", ["I", "Z@0"])
    every = ["I"] + [f"{p}@{q}" for q in range(9) for p in "XYZ"]
    assert knill_laflamme_check("shor9", every)


@pytest.mark.parametrize("name", sorted(CODES))
def test_generators_commute_densely(name):
    gens = stabilizers(name)
    assert generators_commute(gens)
    for a, b in itertools.combinations(gens, 2):
        pa, pb = pauli_matrix(a.label), pauli_matrix(b.label)
        assert np.max(np.abs(pa @ pb - pb @ pa)) < 1e-12
    assert len(gens) == CODES[name].n - 1


def test_commutation_rule_catches_anticommuting_pair():
    assert not generators_commute(["XI", "ZI"])
    assert generators_commute(["XX", "ZZ"])


def test_error_parsing():
    e = parse_error("u@3:9")
    assert e.kind == "U" and e.qubit == 3
    assert np.allclose(e.operator(), random_su2(9))
    with pytest.raises(BadFormat):
        parse_error("Q@1")
    with pytest.raises(BadIndex):
        apply_error("bitflip", encode("bitflip", [1, 0]), parse_error("X@5"))
    with pytest.raises(BadFormat):
        encode("steane", [1, 0])


@settings(max_examples=100)
@given(st.integers(0, 2**31 - 1))
def test_random_su2_is_special_unitary(seed):
    u = random_su2(seed)
    assert np.allclose(u.conj().T @ u, np.eye(2), atol=1e-12)
    assert abs(np.linalg.det(u) - 1) < 1e-12
