"""Simulated laboratory data: visibility scaling and finite-shot sampling.

The noise model scales every non-identity correlation expectation by a single
visibility alpha. Sampling draws +/-1 outcomes from a seeded binomial; records
get stateless substreams so time points can be produced in parallel with
scheduling-independent results.
"""

import hashlib
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .qcore import expectation


@dataclass(frozen=True)
class NoiseModel:
    """Single-parameter visibility model, alpha in [0, 1]."""

    alpha: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"visibility alpha must be in [0, 1], got {self.alpha}")


@dataclass(frozen=True)
class MeasurementRecord:
    """One (time, setting) cell of a scenario run."""

    t: float
    setting: str
    ideal: float
    noisy: float
    sampled: Optional[float] = None
    stderr: Optional[float] = None
    shots: Optional[int] = None

    def to_dict(self):
        return {
            "t": self.t,
            "setting": self.setting,
            "ideal": self.ideal,
            "noisy": self.noisy,
            "sampled": self.sampled,
            "stderr": self.stderr,
            "shots": self.shots,
        }


def apply_visibility(value, setting, model):
    """alpha * value for non-identity settings; identity is unaffected."""
    if setting.is_identity:
        return value
    return model.alpha * value


def record_seed(seed, t_index, setting):
    """Stateless per-record substream seed from (seed, time index, setting)."""
    digest = hashlib.blake2b(
        f"{t_index}:{setting}".encode(), digest_size=8
    ).digest()
    return seed ^ int.from_bytes(digest, "little")


def _binomial_stderr(k, shots):
    if k == 0 or k == shots:
        return 2.0 / shots
    return 2.0 * math.sqrt(k * (shots - k) / shots) / shots


def sample_from_expectation(mean, shots, seed):
    """Binomial +/-1 sampling around a target expectation.

    Returns (estimate, stderr); deterministic for identical inputs.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    p_plus = min(1.0, max(0.0, (1.0 + mean) / 2.0))
    rng = np.random.default_rng(seed)
    k = int(rng.binomial(shots, p_plus))
    estimate = 2.0 * k / shots - 1.0
    return estimate, _binomial_stderr(k, shots)


def sample_expectation(p, s, shots, seed):
    """Finite-shot estimate of <P> on state s with binomial standard error."""
    if p.is_identity:
        raise ValueError("identity string has expectation 1 exactly; nothing to sample")
    return sample_from_expectation(expectation(p, s), shots, seed)


def poisson_counting_stderr(n_plus, n_minus):
    """Standard error of E = (n+ - n-)/(n+ + n-) under sqrt(n) count noise."""
    if n_plus < 0 or n_minus < 0:
        raise ValueError("counts must be nonnegative")
    total = n_plus + n_minus
    if total == 0:
        raise ValueError("all counts are zero")
    if n_plus == 0 or n_minus == 0:
        return 2.0 / total
    return 2.0 * math.sqrt(n_plus * n_minus / total**3)
