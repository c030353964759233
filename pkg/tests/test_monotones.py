import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_state, seeds
from embedsim.embedding import embed_state
from embedsim.monotones import (
    combine_expectations,
    monotone_direct,
    monotone_embedded,
    required_settings,
)
from embedsim.qcore import PauliString, StateVector, apply_pauli_string

SQRT2 = math.sqrt(2.0)


def bell_state():
    return StateVector(np.array([1, 0, 0, 1]) / SQRT2)


def ghz_state(n):
    amps = np.zeros(2**n)
    amps[0] = amps[-1] = 1 / SQRT2
    return StateVector(amps)


def w_type_state():
    amps = np.zeros(8)
    amps[0b011] = 1
    amps[0b101] = -1
    amps[0b110] = 1
    return StateVector(amps / math.sqrt(3))


def product_state(seed, n):
    rng = np.random.default_rng(seed)
    amps = np.array([1.0 + 0j])
    for _ in range(n):
        q = rng.normal(size=2) + 1j * rng.normal(size=2)
        amps = np.kron(amps, q / np.linalg.norm(q))
    return StateVector(amps)


class TestRequiredSettings:
    def test_two_qubits(self):
        assert [str(s) for s in required_settings(2)] == ["ZYY", "XYY"]

    def test_three_qubits(self):
        assert [str(s) for s in required_settings(3)] == [
            "ZXYY", "XXYY", "ZZYY", "XZYY", "ZIYY", "XIYY",
        ]

    def test_four_qubits(self):
        assert [str(s) for s in required_settings(4)] == ["ZYYYY", "XYYYY"]

    @pytest.mark.parametrize("n,count", [(2, 2), (3, 6), (4, 2), (5, 6), (6, 2), (7, 6)])
    def test_setting_counts(self, n, count):
        assert len(required_settings(n)) == count

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            required_settings(1)


class TestMonotoneDirect:
    def test_bell(self):
        result = monotone_direct(bell_state())
        assert result.value == pytest.approx(1.0, abs=1e-12)
        assert result.label == "concurrence"
        assert result.parity == "even"
        assert len(result.components) == 2

    def test_ghz3(self):
        result = monotone_direct(ghz_state(3))
        assert result.value == pytest.approx(1.0, abs=1e-12)
        assert result.label == "three-tangle"
        assert len(result.components) == 6

    def test_w_type_zero(self):
        assert monotone_direct(w_type_state()).value == pytest.approx(0.0, abs=1e-10)

    def test_rejects_single_qubit(self):
        with pytest.raises(ValueError):
            monotone_direct(StateVector.zero(1))


class TestMonotoneEmbedded:
    def test_embedded_bell(self):
        result = monotone_embedded(embed_state(bell_state()))
        assert result.value == pytest.approx(1.0, abs=1e-12)

    def test_tangle_state(self):
        t = math.pi / 12
        amps = np.zeros(16)
        amps[0] = math.cos(t)
        amps[15] = -math.sin(t)
        result = monotone_embedded(StateVector(amps))
        assert result.value == pytest.approx(math.sin(math.pi / 6) ** 2, abs=1e-12)

    def test_concurrence_state(self):
        t = math.pi / 12  # sqrt(2) t = pi/12
        c, s = math.cos(t), math.sin(t)
        amps = np.zeros(8)
        amps[0b000] = c
        amps[0b011] = s / SQRT2
        amps[0b110] = -s / SQRT2
        result = monotone_embedded(StateVector(amps))
        assert result.value == pytest.approx(math.sin(math.pi / 6) / SQRT2, abs=1e-12)

    @given(seeds, st.integers(2, 5))
    @settings(max_examples=60)
    def test_oracle_equivalence(self, seed, n):
        psi = random_state(seed, n)
        direct = monotone_direct(psi).value
        embedded = monotone_embedded(embed_state(psi)).value
        assert direct == pytest.approx(embedded, abs=1e-10)


class TestInvariants:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_range_on_random_states(self, n):
        rng = np.random.default_rng(99)
        for _ in range(10_000 // (2**n)):
            amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
            psi = StateVector(amps / np.linalg.norm(amps))
            value = monotone_direct(psi).value
            assert 0.0 <= value <= 1.0 + 1e-9

    @given(seeds, st.integers(2, 4))
    @settings(max_examples=50)
    def test_separable_states_zero(self, seed, n):
        assert monotone_direct(product_state(seed, n)).value <= 1e-10

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_ghz_extreme(self, n):
        assert monotone_direct(ghz_state(n)).value == pytest.approx(1.0, abs=1e-10)

    @given(seeds, st.floats(0, 2 * math.pi))
    @settings(max_examples=40)
    def test_global_phase_invariance(self, seed, phi):
        psi = random_state(seed, 3)
        rotated = StateVector(np.exp(1j * phi) * psi.amplitudes)
        assert monotone_direct(rotated).value == pytest.approx(
            monotone_direct(psi).value, abs=1e-10
        )

    @given(seeds, st.floats(0, 2 * math.pi), st.integers(0, 2))
    @settings(max_examples=40)
    def test_local_z_rotation_invariance(self, seed, theta, qubit):
        psi = random_state(seed, 3)
        # exp(-i theta Z_q / 2) = cos(theta/2) I - i sin(theta/2) Z_q
        z = PauliString("".join("Z" if q == qubit else "I" for q in range(3)))
        rotated_amps = (
            math.cos(theta / 2) * psi.amplitudes
            - 1j * math.sin(theta / 2) * apply_pauli_string(z, psi).amplitudes
        )
        rotated = StateVector(rotated_amps)
        assert monotone_direct(rotated).value == pytest.approx(
            monotone_direct(psi).value, abs=1e-10
        )


class TestCombineAndSerialize:
    def test_combine_even(self):
        assert combine_expectations(2, [-0.6, 0.8]) == pytest.approx(1.0, abs=1e-12)

    def test_combine_wrong_count(self):
        with pytest.raises(ValueError):
            combine_expectations(3, [0.0, 0.0])

    def test_json_schema(self):
        doc = monotone_direct(bell_state()).to_dict()
        parsed = json.loads(json.dumps(doc))
        assert set(parsed) == {"value", "n_system", "parity", "components"}
        assert parsed["components"][0].keys() == {"setting", "expectation"}
