"""Dense state-vector and Pauli-string kernels.

Conventions: qubit 0 is the leftmost letter of a Pauli string and the most
significant bit of a basis index, so |0...0> sits at index 0 and the string
"ZYY" puts Z on qubit 0.
"""

import math
import re
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

PAULI_LABELS = "IXYZ"

_PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# dense matrices only below this qubit count; matrix-free paths go further
DENSE_LIMIT = 12
NORM_TOL = 1e-9

MINUS = "−"  # canonical minus sign in Pauli-sum text form


class DimensionError(ValueError):
    """Operator and state act on different qubit counts."""


class CapacityError(ValueError):
    """Dense construction requested above DENSE_LIMIT qubits."""


class NormalizationError(ValueError):
    """Amplitude vector is not a unit vector within tolerance."""


def pauli_matrix(label):
    """Return the 2x2 matrix for a single Pauli label I, X, Y or Z."""
    try:
        return _PAULI_MATRICES[label].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli label {label!r}") from None


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis, e.g. PauliString("ZYY")."""

    factors: str

    def __post_init__(self):
        if not self.factors:
            raise ValueError("empty Pauli string")
        bad = set(self.factors) - set(PAULI_LABELS)
        if bad:
            raise ValueError(f"invalid Pauli factors {sorted(bad)} in {self.factors!r}")

    @property
    def n_qubits(self):
        return len(self.factors)

    @property
    def is_identity(self):
        return set(self.factors) == {"I"}

    @property
    def y_count(self):
        return self.factors.count("Y")

    def matrix(self):
        """Dense 2^n x 2^n matrix via Kronecker products."""
        if self.n_qubits > DENSE_LIMIT:
            raise CapacityError(
                f"dense matrix for {self.n_qubits} qubits exceeds limit {DENSE_LIMIT}"
            )
        return reduce(np.kron, (_PAULI_MATRICES[f] for f in self.factors))

    def __str__(self):
        return self.factors


@dataclass(frozen=True)
class PauliSum:
    """Real linear combination of equal-length Pauli strings (Hermitian).

    Terms are normalized on construction: sorted by string, duplicates merged,
    zero coefficients dropped.
    """

    terms: tuple = ()
    n_qubits: int = field(default=None)

    def __post_init__(self):
        merged = {}
        n = self.n_qubits
        for coeff, string in self.terms:
            if isinstance(string, str):
                string = PauliString(string)
            if isinstance(coeff, complex):
                if coeff.imag != 0:
                    raise ValueError(f"non-real coefficient {coeff} (not Hermitian)")
                coeff = coeff.real
            coeff = float(coeff)
            if not math.isfinite(coeff):
                raise ValueError(f"non-finite coefficient {coeff}")
            if n is None:
                n = string.n_qubits
            elif string.n_qubits != n:
                raise DimensionError(
                    f"term {string} has {string.n_qubits} qubits, expected {n}"
                )
            merged[string.factors] = merged.get(string.factors, 0.0) + coeff
        if n is None:
            raise ValueError("empty PauliSum needs an explicit n_qubits")
        normalized = tuple(
            (c, PauliString(f)) for f, c in sorted(merged.items()) if c != 0.0
        )
        object.__setattr__(self, "terms", normalized)
        object.__setattr__(self, "n_qubits", n)

    @classmethod
    def from_text(cls, text, n_qubits=None):
        """Parse "1.0*XY + 1.0*XZ" / "-1*YXXX" style text (accepts '-' or '−')."""
        cleaned = text.replace(MINUS, "-").strip()
        if not cleaned:
            raise ValueError("empty Pauli-sum text")
        pattern = re.compile(
            r"\s*([+-]?)\s*(?:(\d+\.?\d*(?:[eE][+-]?\d+)?)\s*\*\s*)?([IXYZ]+)"
        )
        terms = []
        pos = 0
        while pos < len(cleaned):
            m = pattern.match(cleaned, pos)
            if m is None:
                raise ValueError(f"cannot parse Pauli sum at {cleaned[pos:]!r}")
            sign, coeff, string = m.groups()
            value = float(coeff) if coeff else 1.0
            if sign == "-":
                value = -value
            terms.append((value, PauliString(string)))
            pos = m.end()
        return cls(tuple(terms), n_qubits)

    def one_norm(self):
        return sum(abs(c) for c, _ in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (coeff, string) in enumerate(self.terms):
            mag = f"{abs(coeff):g}*{string}"
            if i == 0:
                parts.append(mag if coeff >= 0 else f"{MINUS}{mag}")
            else:
                parts.append(f" + {mag}" if coeff >= 0 else f" {MINUS} {mag}")
        return "".join(parts)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized complex amplitude vector over n qubits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size < 2 or amps.size & (amps.size - 1):
            raise ValueError(f"amplitude count {amps.size} is not a power of two >= 2")
        if not np.all(np.isfinite(amps)):
            raise ValueError("non-finite amplitude")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"state norm {norm} deviates from 1 beyond {NORM_TOL}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self):
        return int(self.amplitudes.size).bit_length() - 1

    @classmethod
    def zero(cls, n_qubits):
        """|0...0> on n_qubits."""
        amps = np.zeros(2**n_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(amps)

    @classmethod
    def basis(cls, bits):
        """Computational basis state from a bit string, qubit 0 leftmost."""
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int(bits, 2)] = 1.0
        return cls(amps)

    def isclose(self, other, atol=1e-10):
        return self.amplitudes.shape == other.amplitudes.shape and np.allclose(
            self.amplitudes, other.amplitudes, atol=atol, rtol=0.0
        )


def _check_lengths(p, n_qubits):
    if p.n_qubits != n_qubits:
        raise DimensionError(
            f"Pauli string on {p.n_qubits} qubits applied to {n_qubits}-qubit state"
        )


def _apply_pauli(p, amps):
    """P @ amps without materializing the matrix: bit flips plus phases."""
    n = p.n_qubits
    dim = amps.size
    idx = np.arange(dim)
    phase = np.ones(dim, dtype=complex)
    flip = 0
    for q, factor in enumerate(p.factors):
        bitpos = n - 1 - q
        if factor == "X":
            flip |= 1 << bitpos
        elif factor == "Y":
            flip |= 1 << bitpos
            bits = (idx >> bitpos) & 1
            phase *= 1j * (1 - 2 * bits)
        elif factor == "Z":
            bits = (idx >> bitpos) & 1
            phase *= 1 - 2 * bits
    if flip:
        return (phase * amps)[idx ^ flip]
    return phase * amps


def apply_pauli_string(p, s):
    """Return P|s> as a StateVector (norm preserved)."""
    _check_lengths(p, s.n_qubits)
    return StateVector(_apply_pauli(p, s.amplitudes))


def dense_matrix(h):
    """Dense Hermitian matrix of a PauliSum (oracle path, n <= DENSE_LIMIT)."""
    if h.n_qubits > DENSE_LIMIT:
        raise CapacityError(
            f"dense matrix for {h.n_qubits} qubits exceeds limit {DENSE_LIMIT}"
        )
    dim = 2**h.n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for coeff, string in h.terms:
        out += coeff * string.matrix()
    return out


def expectation(p, s):
    """<s|P|s> for a Pauli string; real by Hermiticity, in [-1, 1]."""
    _check_lengths(p, s.n_qubits)
    value = np.vdot(s.amplitudes, _apply_pauli(p, s.amplitudes))
    assert abs(value.imag) <= 1e-10, f"imaginary residue {value.imag} in expectation"
    return float(value.real)


def _apply_sum(h, amps):
    out = np.zeros_like(amps)
    for coeff, string in h.terms:
        out += coeff * _apply_pauli(string, amps)
    return out


def _taylor_step(h, amps, dt, budget):
    """One substep of exp(-i*h*dt) @ amps; requires one_norm(h)*|dt| <= 1."""
    acc = amps.copy()
    term = amps
    for k in range(1, 120):
        term = (-1j * dt / k) * _apply_sum(h, term)
        acc += term
        # next-term norm bound: ||term|| * budget / (k+1)
        if np.linalg.norm(term) * budget / (k + 1) < 1e-14:
            return acc
    raise RuntimeError("Taylor series failed to converge within 120 terms")


def evolve(h, s0, t):
    """exp(-iHt)|s0> via scaled adaptive Taylor, matrix-vector products only."""
    if not math.isfinite(t):
        raise ValueError(f"non-finite evolution time {t}")
    if h.n_qubits != s0.n_qubits:
        raise DimensionError(
            f"Hamiltonian on {h.n_qubits} qubits, state on {s0.n_qubits}"
        )
    if t == 0 or not h.terms:
        return s0
    total_budget = h.one_norm() * abs(t)
    m = max(1, math.ceil(total_budget))
    dt = t / m
    budget = total_budget / m
    amps = np.array(s0.amplitudes, dtype=complex)
    for _ in range(m):
        amps = _taylor_step(h, amps, dt, budget)
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > 1e-8:
        raise RuntimeError(f"evolution norm drift {abs(norm - 1.0)} exceeds 1e-8")
    if abs(norm - 1.0) > 1e-12:
        amps = amps / norm
    return StateVector(amps)
