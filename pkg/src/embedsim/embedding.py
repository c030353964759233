"""Ancilla embedding of states and Hamiltonians.

An N-qubit state |psi> maps to the (N+1)-qubit real-amplitude state
|0> (x) Re|psi> + |1> (x) Im|psi>, with the ancilla as qubit 0 (leftmost
letter, most significant bit). On the enlarged state the conjugation
expectation <psi|A|psi*> becomes measurable as <ZA> - i<XA>.
"""

from dataclasses import dataclass

import numpy as np

from .qcore import (
    DimensionError,
    PauliString,
    PauliSum,
    StateVector,
    _apply_pauli,
    dense_matrix,
    expectation,
)


class NotAnEmbeddingError(ValueError):
    """Input blocks do not reconstruct a unit state."""


def embed_state(psi):
    """Enlarge |psi> to |0> (x) Re|psi> + |1> (x) Im|psi> (all-real amplitudes)."""
    a = psi.amplitudes
    return StateVector(np.concatenate([a.real, a.imag]).astype(complex))


def unembed_state(psi_tilde):
    """Invert embed_state: Re-block + i*Im-block as an N-qubit state.

    Rejects inputs whose reconstruction is not a unit vector instead of
    silently renormalizing; bit-exact on genuine embeddings.
    """
    if psi_tilde.n_qubits < 2:
        raise DimensionError("embedded state needs at least 2 qubits")
    half = psi_tilde.amplitudes.size // 2
    re_block = psi_tilde.amplitudes[:half]
    im_block = psi_tilde.amplitudes[half:]
    reconstructed = re_block + 1j * im_block
    norm = np.linalg.norm(reconstructed)
    if abs(norm - 1.0) > 1e-9:
        raise NotAnEmbeddingError(
            f"reconstructed norm {norm} is not 1; input is not an embedded state"
        )
    return StateVector(reconstructed)


def embed_hamiltonian(h):
    """Map a Hermitian PauliSum H on N qubits to H-tilde on N+1 qubits.

    Term rule: even Y count (entrywise-real string) c*P -> (-c)*(Y (x) P);
    odd Y count (entrywise-imaginary string) c*P -> c*(I (x) P). The dense
    result equals the block matrix [[iB, iA], [-iA, iB]] with A = Re(H),
    B = Im(H) entrywise.
    """
    terms = []
    for coeff, string in h.terms:
        if string.y_count % 2 == 0:
            terms.append((-coeff, PauliString("Y" + string.factors)))
        else:
            terms.append((coeff, PauliString("I" + string.factors)))
    return PauliSum(tuple(terms), h.n_qubits + 1)


def embedded_block_matrix(h):
    """Dense oracle for embed_hamiltonian: the [[iB, iA], [-iA, iB]] block."""
    hd = dense_matrix(h)
    a = hd.real
    b = hd.imag
    return np.block([[1j * b, 1j * a], [-1j * a, 1j * b]])


def conjugation_expectation(a, psi):
    """Direct evaluation of <psi|A|psi*> (oracle; generally complex)."""
    if a.n_qubits != psi.n_qubits:
        raise DimensionError(
            f"observable on {a.n_qubits} qubits, state on {psi.n_qubits}"
        )
    return complex(np.vdot(psi.amplitudes, _apply_pauli(a, np.conj(psi.amplitudes))))


def embedded_conjugation_expectation(a, psi_tilde):
    """<AK> from Hermitian measurements on the enlarged state: <ZA> - i<XA>."""
    if psi_tilde.n_qubits != a.n_qubits + 1:
        raise DimensionError(
            f"enlarged state has {psi_tilde.n_qubits} qubits, "
            f"expected {a.n_qubits + 1}"
        )
    z_val = expectation(PauliString("Z" + a.factors), psi_tilde)
    x_val = expectation(PauliString("X" + a.factors), psi_tilde)
    return complex(z_val, -x_val)


@dataclass(frozen=True)
class EmbeddedSystem:
    """Enlarged simulator for an N-qubit system: H-tilde plus initial state."""

    n_system: int
    h_tilde: PauliSum
    psi_tilde_0: StateVector

    def __post_init__(self):
        if self.h_tilde.n_qubits != self.n_system + 1:
            raise DimensionError("h_tilde must act on n_system + 1 qubits")
        if self.psi_tilde_0.n_qubits != self.n_system + 1:
            raise DimensionError("psi_tilde_0 must have n_system + 1 qubits")


def embed_system(h, psi0):
    """Build the enlarged simulator for system Hamiltonian h and state psi0."""
    if h.n_qubits != psi0.n_qubits:
        raise DimensionError("Hamiltonian and initial state sizes differ")
    return EmbeddedSystem(psi0.n_qubits, embed_hamiltonian(h), embed_state(psi0))
