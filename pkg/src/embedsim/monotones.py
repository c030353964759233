"""Entanglement monotones from conjugation expectations.

Even N: concurrence-type |<Y^N K>|, two measurement settings.
Odd N: three-tangle-type |<A1 K>^2 + <A2 K>^2 - <A3 K>^2| with
A1 = X Y^(N-1), A2 = Z Y^(N-1), A3 = I Y^(N-1), six settings.
"""

from dataclasses import dataclass, field

from .embedding import conjugation_expectation, embedded_conjugation_expectation
from .qcore import PauliString, expectation

# clamp ceiling: values above 1 by more than this are treated as bugs
CLAMP_LIMIT = 1e-6


def _conjugation_observables(n_system):
    """System-side observables A_k whose <A_k K> values form the monotone."""
    if n_system < 2:
        raise ValueError(f"monotones need at least 2 system qubits, got {n_system}")
    ys = "Y" * (n_system - 1)
    if n_system % 2 == 0:
        return [PauliString("Y" * n_system)]
    return [PauliString("X" + ys), PauliString("Z" + ys), PauliString("I" + ys)]


def required_settings(n_system):
    """Enlarged-state measurement settings: Z and X prefixed to each A_k."""
    settings = []
    for a in _conjugation_observables(n_system):
        settings.append(PauliString("Z" + a.factors))
        settings.append(PauliString("X" + a.factors))
    return settings


@dataclass(frozen=True)
class MonotoneResult:
    value: float
    n_system: int
    parity: str
    label: str
    components: tuple = field(default=())  # (setting string, real expectation)
    clamp_residual: float = 0.0

    def to_dict(self):
        return {
            "value": self.value,
            "n_system": self.n_system,
            "parity": self.parity,
            "components": [
                {"setting": s, "expectation": e} for s, e in self.components
            ],
        }


def _label(n_system):
    if n_system == 2:
        return "concurrence"
    if n_system == 3:
        return "three-tangle"
    parity = "even" if n_system % 2 == 0 else "odd"
    return f"{n_system}-monotone ({parity})"


def combine_expectations(n_system, values):
    """Monotone value from the raw setting expectations, in required_settings order.

    values alternates (<Z A_k>, <X A_k>) per observable; each complex
    c_k = <Z A_k> - i <X A_k>.
    """
    expected = 2 if n_system % 2 == 0 else 6
    if len(values) != expected:
        raise ValueError(f"need {expected} expectations for N={n_system}, got {len(values)}")
    cs = [complex(values[2 * k], -values[2 * k + 1]) for k in range(expected // 2)]
    if n_system % 2 == 0:
        return abs(cs[0])
    return abs(cs[0] ** 2 + cs[1] ** 2 - cs[2] ** 2)


def _finalize(raw, n_system, components):
    residual = max(0.0, raw - 1.0)
    if residual > CLAMP_LIMIT:
        raise RuntimeError(f"monotone value {raw} exceeds 1 by more than {CLAMP_LIMIT}")
    value = min(raw, 1.0)
    parity = "even" if n_system % 2 == 0 else "odd"
    return MonotoneResult(
        value=value,
        n_system=n_system,
        parity=parity,
        label=_label(n_system),
        components=tuple(components),
        clamp_residual=residual,
    )


def monotone_direct(psi):
    """Monotone from <A_k K> evaluated directly on the system state (oracle)."""
    n = psi.n_qubits
    observables = _conjugation_observables(n)
    cs = [conjugation_expectation(a, psi) for a in observables]
    components = []
    for a, c in zip(observables, cs):
        components.append((f"Z{a.factors}", c.real))
        components.append((f"X{a.factors}", -c.imag))
    if n % 2 == 0:
        raw = abs(cs[0])
    else:
        raw = abs(cs[0] ** 2 + cs[1] ** 2 - cs[2] ** 2)
    return _finalize(raw, n, components)


def monotone_embedded(psi_tilde):
    """Monotone from the 2 or 6 Hermitian settings on the enlarged state."""
    n = psi_tilde.n_qubits - 1
    settings = required_settings(n)
    values = [expectation(s, psi_tilde) for s in settings]
    raw = combine_expectations(n, values)
    components = [(s.factors, v) for s, v in zip(settings, values)]
    return _finalize(raw, n, components)
