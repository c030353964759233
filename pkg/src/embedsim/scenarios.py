"""End-to-end scenario runs: evolve, embed, measure, form monotones, fit.

Two built-in scenarios: a two-qubit concurrence system (H = XY + XZ) and a
three-qubit tangle system (H = XXX), each on a 12-point time grid.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import measurement
from .embedding import embed_hamiltonian, embed_state
from .measurement import MeasurementRecord, NoiseModel, apply_visibility
from .monotones import combine_expectations, required_settings
from .qcore import PauliSum, StateVector, evolve, expectation

EVOLUTION_MODES = ("embedded", "direct")


class ConfigError(ValueError):
    """Invalid scenario configuration; carries the offending field name."""

    def __init__(self, field_name, message):
        self.field_name = field_name
        super().__init__(f"{field_name}: {message}")


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    n_system: int
    hamiltonian: PauliSum
    initial_state: StateVector
    dt: float
    steps: int = 12
    shots: Optional[int] = None
    alpha: float = 1.0
    seed: int = 0
    evolution_mode: str = "embedded"

    def validate(self):
        if self.n_system < 2 or self.n_system > 20:
            raise ConfigError("n_system", f"must be in [2, 20], got {self.n_system}")
        if self.hamiltonian.n_qubits != self.n_system:
            raise ConfigError(
                "hamiltonian",
                f"acts on {self.hamiltonian.n_qubits} qubits, expected {self.n_system}",
            )
        if self.initial_state.n_qubits != self.n_system:
            raise ConfigError(
                "initial_state",
                f"has {self.initial_state.n_qubits} qubits, expected {self.n_system}",
            )
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ConfigError("dt", f"must be positive and finite, got {self.dt}")
        if self.steps < 1:
            raise ConfigError("steps", f"must be >= 1, got {self.steps}")
        if self.shots is not None and self.shots < 1:
            raise ConfigError("shots", f"must be >= 1 when set, got {self.shots}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError("alpha", f"must be in [0, 1], got {self.alpha}")
        if self.evolution_mode not in EVOLUTION_MODES:
            raise ConfigError(
                "evolution_mode",
                f"must be one of {EVOLUTION_MODES}, got {self.evolution_mode!r}",
            )
        return self

    def to_dict(self):
        return {
            "name": self.name,
            "n_system": self.n_system,
            "hamiltonian": str(self.hamiltonian),
            "initial_state": [
                [a.real, a.imag] for a in self.initial_state.amplitudes
            ],
            "dt": self.dt,
            "steps": self.steps,
            "shots": self.shots,
            "alpha": self.alpha,
            "seed": self.seed,
            "evolution_mode": self.evolution_mode,
        }

    @classmethod
    def from_dict(cls, doc):
        required = ("name", "n_system", "hamiltonian", "dt")
        for key in required:
            if key not in doc:
                raise ConfigError(key, "missing required field")
        try:
            hamiltonian = PauliSum.from_text(doc["hamiltonian"])
        except ValueError as exc:
            raise ConfigError("hamiltonian", str(exc)) from exc
        n_system = int(doc["n_system"])
        if "initial_state" in doc and doc["initial_state"] is not None:
            try:
                amps = np.array(
                    [complex(re, im) for re, im in doc["initial_state"]]
                )
                initial_state = StateVector(amps)
            except (TypeError, ValueError) as exc:
                raise ConfigError("initial_state", str(exc)) from exc
        else:
            initial_state = StateVector.zero(n_system)
        return cls(
            name=str(doc["name"]),
            n_system=n_system,
            hamiltonian=hamiltonian,
            initial_state=initial_state,
            dt=float(doc["dt"]),
            steps=int(doc.get("steps", 12)),
            shots=None if doc.get("shots") is None else int(doc["shots"]),
            alpha=float(doc.get("alpha", 1.0)),
            seed=int(doc.get("seed", 0)),
            evolution_mode=str(doc.get("evolution_mode", "embedded")),
        )


@dataclass(frozen=True)
class TimePoint:
    t_index: int
    t: float
    records: tuple
    monotone_ideal: float
    monotone_noisy: float
    monotone_sampled: Optional[float] = None

    def to_dict(self):
        return {
            "t_index": self.t_index,
            "t": self.t,
            "records": [r.to_dict() for r in self.records],
            "monotone_ideal": self.monotone_ideal,
            "monotone_noisy": self.monotone_noisy,
            "monotone_sampled": self.monotone_sampled,
        }


@dataclass(frozen=True)
class TimeSeries:
    config: ScenarioConfig
    points: tuple

    def to_dict(self):
        return {
            "config": self.config.to_dict(),
            "points": [p.to_dict() for p in self.points],
        }

    @classmethod
    def from_dict(cls, doc):
        config = ScenarioConfig.from_dict(doc["config"])
        points = tuple(
            TimePoint(
                t_index=p["t_index"],
                t=p["t"],
                records=tuple(MeasurementRecord(**r) for r in p["records"]),
                monotone_ideal=p["monotone_ideal"],
                monotone_noisy=p["monotone_noisy"],
                monotone_sampled=p["monotone_sampled"],
            )
            for p in doc["points"]
        )
        return cls(config=config, points=points)


def builtin_concurrence_scenario(**overrides):
    """Two-qubit concurrence system: H = XY + XZ, dt = pi/(12*sqrt(2))."""
    config = ScenarioConfig(
        name="concurrence",
        n_system=2,
        hamiltonian=PauliSum.from_text("1*XY + 1*XZ"),
        initial_state=StateVector.zero(2),
        dt=math.pi / (12.0 * math.sqrt(2.0)),
    )
    return replace(config, **overrides) if overrides else config


def builtin_tangle_scenario(**overrides):
    """Three-qubit tangle system: H = XXX, dt = pi/12."""
    config = ScenarioConfig(
        name="tangle",
        n_system=3,
        hamiltonian=PauliSum.from_text("1*XXX"),
        initial_state=StateVector.zero(3),
        dt=math.pi / 12.0,
    )
    return replace(config, **overrides) if overrides else config


BUILTIN_SCENARIOS = {
    "concurrence": builtin_concurrence_scenario,
    "tangle": builtin_tangle_scenario,
}


def run_scenario(config):
    """Produce the full TimeSeries for a validated config.

    Grid points are k*dt for k in 0..steps-1. The enlarged state is obtained
    either by evolving the embedded state under H-tilde ("embedded") or by
    evolving the system state under H and embedding the result ("direct").
    """
    config.validate()
    settings = required_settings(config.n_system)
    model = NoiseModel(config.alpha)
    h_tilde = embed_hamiltonian(config.hamiltonian)
    psi_tilde = embed_state(config.initial_state)
    psi = config.initial_state
    points = []
    for k in range(config.steps):
        t = k * config.dt
        if k > 0:
            if config.evolution_mode == "embedded":
                psi_tilde = evolve(h_tilde, psi_tilde, config.dt)
            else:
                psi = evolve(config.hamiltonian, psi, config.dt)
                psi_tilde = embed_state(psi)
        records = []
        for setting in settings:
            ideal = expectation(setting, psi_tilde)
            noisy = apply_visibility(ideal, setting, model)
            sampled = stderr = None
            if config.shots is not None:
                sampled, stderr = measurement.sample_from_expectation(
                    noisy,
                    config.shots,
                    measurement.record_seed(config.seed, k, setting.factors),
                )
            records.append(
                MeasurementRecord(
                    t=t,
                    setting=setting.factors,
                    ideal=ideal,
                    noisy=noisy,
                    sampled=sampled,
                    stderr=stderr,
                    shots=config.shots,
                )
            )
        points.append(
            TimePoint(
                t_index=k,
                t=t,
                records=tuple(records),
                monotone_ideal=combine_expectations(
                    config.n_system, [r.ideal for r in records]
                ),
                monotone_noisy=combine_expectations(
                    config.n_system, [r.noisy for r in records]
                ),
                monotone_sampled=(
                    combine_expectations(
                        config.n_system, [r.sampled for r in records]
                    )
                    if config.shots is not None
                    else None
                ),
            )
        )
    return TimeSeries(config=config, points=tuple(points))


def fit_amplitude(series, model=None):
    """Least-squares visibility amplitude from a TimeSeries.

    model "even_linear" fits observed = alpha * ideal; "odd_quadratic" fits
    observed = alpha^2 * ideal. Defaults from the system parity. Closed-form
    regression through the origin on the ideal monotone; returns
    (alpha_hat, rms_residual).
    """
    if model is None:
        model = "even_linear" if series.config.n_system % 2 == 0 else "odd_quadratic"
    if model not in ("even_linear", "odd_quadratic"):
        raise ValueError(f"unknown fit model {model!r}")
    ideal = np.array([p.monotone_ideal for p in series.points])
    observed = np.array(
        [
            p.monotone_sampled if p.monotone_sampled is not None else p.monotone_noisy
            for p in series.points
        ]
    )
    if np.count_nonzero(ideal > 1e-12) < 3:
        raise ValueError("need at least 3 points with nonzero ideal monotone to fit")
    scale = float(np.dot(ideal, observed) / np.dot(ideal, ideal))
    if model == "even_linear":
        alpha_hat = scale
        fitted = alpha_hat * ideal
    else:
        alpha_hat = math.sqrt(max(scale, 0.0))
        fitted = alpha_hat**2 * ideal
    residual = float(np.sqrt(np.mean((observed - fitted) ** 2)))
    return alpha_hat, residual
