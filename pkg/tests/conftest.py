import numpy as np
from hypothesis import strategies as st

from embedsim.qcore import PAULI_LABELS, PauliString, PauliSum, StateVector


def random_state(seed, n, real=False):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=2**n)
    if not real:
        amps = amps + 1j * rng.normal(size=2**n)
    return StateVector(amps / np.linalg.norm(amps))


def random_pauli_sum(seed, n, n_terms=3):
    rng = np.random.default_rng(seed)
    terms = tuple(
        (
            float(rng.uniform(-2, 2)),
            PauliString("".join(rng.choice(list(PAULI_LABELS), size=n))),
        )
        for _ in range(n_terms)
    )
    return PauliSum(terms, n)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def pauli_strings(n):
    return st.text(alphabet=PAULI_LABELS, min_size=n, max_size=n).map(PauliString)
