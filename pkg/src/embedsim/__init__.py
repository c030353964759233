"""State-vector toolkit for ancilla-embedded entanglement measurement."""

__version__ = "0.1.0"

from .embedding import (
    EmbeddedSystem,
    conjugation_expectation,
    embed_hamiltonian,
    embed_state,
    embed_system,
    embedded_conjugation_expectation,
    unembed_state,
)
from .measurement import (
    MeasurementRecord,
    NoiseModel,
    apply_visibility,
    poisson_counting_stderr,
    sample_expectation,
)
from .monotones import (
    MonotoneResult,
    monotone_direct,
    monotone_embedded,
    required_settings,
)
from .qcore import (
    PauliString,
    PauliSum,
    StateVector,
    apply_pauli_string,
    dense_matrix,
    evolve,
    expectation,
    pauli_matrix,
)
from .scenarios import (
    ScenarioConfig,
    TimeSeries,
    builtin_concurrence_scenario,
    builtin_tangle_scenario,
    fit_amplitude,
    run_scenario,
)
