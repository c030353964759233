"""Randomized oracle self-check suites for the embedding pipeline.

Each suite compares a production path against an independent oracle on
seeded random instances and reports its maximum observed error. Used by the
CLI `selfcheck` command; exits nonzero on any violation.
"""

import math

import numpy as np

from . import embedding
from .monotones import monotone_direct, monotone_embedded
from .qcore import (
    PAULI_LABELS,
    PauliString,
    PauliSum,
    StateVector,
    apply_pauli_string,
    dense_matrix,
    evolve,
    expectation,
)


def _random_state(rng, n, real=False):
    amps = rng.normal(size=2**n)
    if not real:
        amps = amps + 1j * rng.normal(size=2**n)
    return StateVector(amps / np.linalg.norm(amps))


def _random_string(rng, n, allow_identity=True):
    while True:
        factors = "".join(rng.choice(list(PAULI_LABELS), size=n))
        if allow_identity or set(factors) != {"I"}:
            return PauliString(factors)


def _random_sum(rng, n, n_terms=3):
    terms = tuple(
        (float(rng.uniform(-2, 2)), _random_string(rng, n)) for _ in range(n_terms)
    )
    return PauliSum(terms, n)


def _suite_apply_vs_dense(rng):
    err = 0.0
    for _ in range(60):
        n = int(rng.integers(1, 7))
        p = _random_string(rng, n)
        s = _random_state(rng, n)
        direct = apply_pauli_string(p, s).amplitudes
        oracle = p.matrix() @ s.amplitudes
        err = max(err, float(np.max(np.abs(direct - oracle))))
    return err, 1e-12


def _suite_expectation(rng):
    err = 0.0
    for _ in range(60):
        n = int(rng.integers(1, 7))
        p = _random_string(rng, n)
        s = _random_state(rng, n)
        value = expectation(p, s)
        if not -1.0 - 1e-10 <= value <= 1.0 + 1e-10:
            return abs(value) - 1.0, 1e-10
        oracle = np.vdot(s.amplitudes, p.matrix() @ s.amplitudes).real
        err = max(err, abs(value - oracle))
    return err, 1e-10


def _suite_evolution(rng):
    err = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 6))
        h = _random_sum(rng, n)
        s = _random_state(rng, n)
        t1, t2 = rng.uniform(0.1, 1.5, size=2)
        full = evolve(h, s, t1 + t2)
        split = evolve(h, evolve(h, s, t1), t2)
        err = max(err, float(np.max(np.abs(full.amplitudes - split.amplitudes))))
        err = max(err, abs(np.linalg.norm(full.amplitudes) - 1.0))
    return err, 1e-9


def _suite_re_identity(rng):
    err = 0.0
    for _ in range(120):
        n = int(rng.integers(2, 6))
        a = _random_string(rng, n)
        psi = _random_state(rng, n)
        direct = embedding.conjugation_expectation(a, psi)
        embedded = embedding.embedded_conjugation_expectation(
            a, embedding.embed_state(psi)
        )
        err = max(err, abs(direct.real - embedded.real))
    return err, 1e-12


def _suite_im_identity(rng):
    err = 0.0
    for _ in range(120):
        n = int(rng.integers(2, 6))
        a = _random_string(rng, n)
        psi = _random_state(rng, n)
        direct = embedding.conjugation_expectation(a, psi)
        embedded = embedding.embedded_conjugation_expectation(
            a, embedding.embed_state(psi)
        )
        err = max(err, abs(direct.imag - embedded.imag))
    return err, 1e-12


def _suite_hamiltonian_block(rng):
    err = 0.0
    for _ in range(30):
        n = int(rng.integers(1, 5))
        h = _random_sum(rng, n)
        built = dense_matrix(embedding.embed_hamiltonian(h))
        block = embedding.embedded_block_matrix(h)
        err = max(err, float(np.max(np.abs(built - block))))
        err = max(err, float(np.max(np.abs(built - built.conj().T))))
    return err, 1e-12


def _suite_commutation(rng):
    err = 0.0
    for _ in range(12):
        n = int(rng.integers(2, 5))
        h = _random_sum(rng, n)
        h_tilde = embedding.embed_hamiltonian(h)
        for real in (True, False):
            psi0 = _random_state(rng, n, real=real)
            for t in (0.1, 0.7, 2.3):
                via_system = embedding.embed_state(evolve(h, psi0, t))
                via_embedded = evolve(h_tilde, embedding.embed_state(psi0), t)
                err = max(
                    err,
                    float(
                        np.max(
                            np.abs(via_system.amplitudes - via_embedded.amplitudes)
                        )
                    ),
                )
    return err, 1e-9


def _suite_monotone_equivalence(rng):
    err = 0.0
    for _ in range(80):
        n = int(rng.integers(2, 6))
        psi = _random_state(rng, n)
        direct = monotone_direct(psi).value
        embedded = monotone_embedded(embedding.embed_state(psi)).value
        err = max(err, abs(direct - embedded))
    return err, 1e-10


def _suite_canonical_states(rng):
    bell = StateVector(np.array([1, 0, 0, 1]) / math.sqrt(2))
    ghz3 = StateVector(np.concatenate([[1], np.zeros(6), [1]]) / math.sqrt(2))
    w_amps = np.zeros(8)
    w_amps[0b011] = 1
    w_amps[0b101] = -1
    w_amps[0b110] = 1
    w = StateVector(w_amps / math.sqrt(3))
    err = max(
        abs(monotone_direct(bell).value - 1.0),
        abs(monotone_direct(ghz3).value - 1.0),
        abs(monotone_direct(w).value),
    )
    return err, 1e-10


SUITES = [
    ("pauli apply vs dense oracle", _suite_apply_vs_dense),
    ("expectation range and dense oracle", _suite_expectation),
    ("evolution semigroup and unitarity", _suite_evolution),
    ("Re<AK> = <ZA> embedding identity", _suite_re_identity),
    ("Im<AK> = -<XA> embedding identity", _suite_im_identity),
    ("embedded Hamiltonian block oracle", _suite_hamiltonian_block),
    ("evolution/embedding commutation diagram", _suite_commutation),
    ("monotone direct vs embedded", _suite_monotone_equivalence),
    ("canonical entangled states", _suite_canonical_states),
]


def run_selfcheck(report=print, seed=20240613):
    """Run all suites; returns True iff every suite stays under its bound."""
    all_ok = True
    for name, suite in SUITES:
        rng = np.random.default_rng(seed)
        try:
            err, bound = suite(rng)
            ok = err <= bound
        except Exception as exc:  # a crash in a suite is a failure, not an abort
            report(f"FAIL {name}: {exc}")
            all_ok = False
            continue
        report(f"{'PASS' if ok else 'FAIL'} {name} (max error {err:.3e}, bound {bound:g})")
        all_ok = all_ok and ok
    return all_ok
