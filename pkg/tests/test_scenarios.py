import json
import math

import numpy as np
import pytest

from embedsim.embedding import embed_hamiltonian
from embedsim.qcore import PauliSum, StateVector
from embedsim.scenarios import (
    ConfigError,
    ScenarioConfig,
    TimeSeries,
    builtin_concurrence_scenario,
    builtin_tangle_scenario,
    fit_amplitude,
    run_scenario,
)

SQRT2 = math.sqrt(2.0)


class TestBuiltinConfigs:
    def test_concurrence_config(self):
        config = builtin_concurrence_scenario()
        assert config.n_system == 2
        assert str(config.hamiltonian) == "1*XY + 1*XZ"
        assert str(embed_hamiltonian(config.hamiltonian)) == "1*IXY − 1*YXZ"
        assert np.array_equal(
            config.initial_state.amplitudes, StateVector.zero(2).amplitudes
        )
        assert config.dt == pytest.approx(0.18512, abs=5e-6)
        assert config.steps == 12
        assert config.shots is None
        assert config.alpha == 1.0

    def test_tangle_config(self):
        config = builtin_tangle_scenario()
        assert config.n_system == 3
        assert str(embed_hamiltonian(config.hamiltonian)) == "−1*YXXX"
        assert config.dt == pytest.approx(math.pi / 12)
        series = run_scenario(config)
        assert len(series.points[0].records) == 6


class TestValidation:
    def test_rejects_zero_dt(self):
        with pytest.raises(ConfigError) as excinfo:
            builtin_tangle_scenario(dt=0.0).validate()
        assert excinfo.value.field_name == "dt"

    def test_rejects_bad_mode(self):
        with pytest.raises(ConfigError) as excinfo:
            builtin_tangle_scenario(evolution_mode="sideways").validate()
        assert excinfo.value.field_name == "evolution_mode"

    def test_from_dict_missing_field(self):
        with pytest.raises(ConfigError) as excinfo:
            ScenarioConfig.from_dict({"name": "x", "n_system": 2, "dt": 0.1})
        assert excinfo.value.field_name == "hamiltonian"

    def test_from_dict_round_trip(self):
        config = builtin_concurrence_scenario(shots=100, alpha=0.8, seed=5)
        rebuilt = ScenarioConfig.from_dict(config.to_dict())
        assert rebuilt == config or rebuilt.to_dict() == config.to_dict()


class TestRunScenario:
    def test_concurrence_ideal_series(self):
        series = run_scenario(builtin_concurrence_scenario())
        for point in series.points:
            expected = abs(math.sin(2 * SQRT2 * point.t)) / SQRT2
            assert point.monotone_ideal == pytest.approx(expected, abs=1e-9)
        assert series.points[0].monotone_ideal == pytest.approx(0.0, abs=1e-12)
        assert series.points[3].monotone_ideal == pytest.approx(1 / SQRT2, abs=1e-9)

    def test_tangle_ideal_series(self):
        series = run_scenario(builtin_tangle_scenario())
        for point in series.points:
            assert point.monotone_ideal == pytest.approx(
                math.sin(2 * point.t) ** 2, abs=1e-9
            )
            by_setting = {r.setting: r.ideal for r in point.records}
            assert by_setting["XXYY"] == pytest.approx(math.sin(2 * point.t), abs=1e-9)
            for setting in ("ZXYY", "ZZYY", "XZYY", "ZIYY", "XIYY"):
                assert by_setting[setting] == pytest.approx(0.0, abs=1e-9)
        assert series.points[3].monotone_ideal == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize(
        "builder", [builtin_concurrence_scenario, builtin_tangle_scenario]
    )
    def test_mode_equivalence(self, builder):
        embedded = run_scenario(builder(evolution_mode="embedded"))
        direct = run_scenario(builder(evolution_mode="direct"))
        for pe, pd in zip(embedded.points, direct.points):
            for re_, rd in zip(pe.records, pd.records):
                assert re_.ideal == pytest.approx(rd.ideal, abs=1e-9)

    def test_noisy_monotone_scaling(self):
        even = run_scenario(builtin_concurrence_scenario(alpha=0.59))
        for p in even.points:
            if p.monotone_ideal > 1e-9:
                assert p.monotone_noisy / p.monotone_ideal == pytest.approx(
                    0.59, abs=1e-12
                )
        odd = run_scenario(builtin_tangle_scenario(alpha=0.70))
        for p in odd.points:
            if p.monotone_ideal > 1e-9:
                assert p.monotone_noisy / p.monotone_ideal == pytest.approx(
                    0.70**2, abs=1e-12
                )

    def test_sampled_run_deterministic(self):
        config = builtin_tangle_scenario(shots=1000, seed=7)
        first = run_scenario(config)
        second = run_scenario(config)
        assert first.to_dict() == second.to_dict()

    def test_serialization_round_trip(self):
        series = run_scenario(builtin_concurrence_scenario(shots=500, alpha=0.9))
        doc = json.loads(json.dumps(series.to_dict()))
        rebuilt = TimeSeries.from_dict(doc)
        assert rebuilt.to_dict() == series.to_dict()

    def test_custom_scenario(self):
        config = ScenarioConfig(
            name="custom",
            n_system=4,
            hamiltonian=PauliSum.from_text("0.5*XXII + 0.5*IIXX"),
            initial_state=StateVector.zero(4),
            dt=0.2,
            steps=5,
        )
        series = run_scenario(config)
        assert len(series.points) == 5
        assert len(series.points[0].records) == 2  # even N


class TestFitAmplitude:
    def test_exact_recovery_even(self):
        series = run_scenario(builtin_concurrence_scenario(alpha=0.59))
        alpha_hat, residual = fit_amplitude(series)
        assert alpha_hat == pytest.approx(0.59, abs=1e-12)
        assert residual < 1e-12

    def test_exact_recovery_odd(self):
        series = run_scenario(builtin_tangle_scenario(alpha=0.70))
        alpha_hat, residual = fit_amplitude(series)
        assert alpha_hat == pytest.approx(0.70, abs=1e-12)
        assert residual < 1e-12

    def test_identity_case(self):
        alpha_hat, _ = fit_amplitude(run_scenario(builtin_concurrence_scenario()))
        assert alpha_hat == pytest.approx(1.0, abs=1e-12)

    def test_sampled_recovery(self):
        config = builtin_tangle_scenario(alpha=0.70, shots=10_000, seed=1)
        alpha_hat, _ = fit_amplitude(run_scenario(config))
        assert abs(alpha_hat - 0.70) < 0.02

    def test_unfittable_series(self):
        config = ScenarioConfig(
            name="flat",
            n_system=2,
            hamiltonian=PauliSum.from_text("1*ZZ"),  # |00> is an eigenstate
            initial_state=StateVector.zero(2),
            dt=0.1,
            steps=6,
        )
        with pytest.raises(ValueError):
            fit_amplitude(run_scenario(config))

    def test_unknown_model(self):
        series = run_scenario(builtin_concurrence_scenario())
        with pytest.raises(ValueError):
            fit_amplitude(series, model="cubic")
