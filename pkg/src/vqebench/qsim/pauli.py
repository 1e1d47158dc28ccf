"""Pauli-string Hamiltonians and their dense matrix representation.

Qubit 0 corresponds to the leftmost character of a Pauli string and to the
most significant bit of a computational-basis index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionError, ParameterDomainError

PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliSum:
    """Hermitian operator given as a weighted sum of Pauli strings."""

    terms: tuple[tuple[float, str], ...]

    @staticmethod
    def from_terms(terms) -> "PauliSum":
        """Build a PauliSum, merging duplicate strings and validating input."""
        merged: dict[str, float] = {}
        n_qubits = None
        for coeff, string in terms:
            coeff = float(coeff)
            if not math.isfinite(coeff):
                raise ParameterDomainError(f"non-finite coefficient {coeff}")
            string = string.upper()
            if not string or any(c not in "IXYZ" for c in string):
                raise ParameterDomainError(f"invalid Pauli string {string!r}")
            if n_qubits is None:
                n_qubits = len(string)
            elif len(string) != n_qubits:
                raise DimensionError(
                    f"Pauli string {string!r} has length {len(string)}, expected {n_qubits}"
                )
            merged[string] = merged.get(string, 0.0) + coeff
        if not merged:
            raise ParameterDomainError("PauliSum needs at least one term")
        return PauliSum(tuple((c, s) for s, c in merged.items()))

    @property
    def n_qubits(self) -> int:
        return len(self.terms[0][1])

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits

    def to_matrix(self) -> np.ndarray:
        """Dense matrix of the operator (qubit 0 most significant)."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for coeff, string in self.terms:
            out += coeff * pauli_string_matrix(string)
        return out

    def __iter__(self):
        return iter(self.terms)


def pauli_string_matrix(string: str) -> np.ndarray:
    """Dense matrix of a single Pauli string via Kronecker products."""
    mat = PAULI_1Q[string[0]]
    for c in string[1:]:
        mat = np.kron(mat, PAULI_1Q[c])
    return mat


def parse_hamiltonian(text: str) -> PauliSum:
    """Parse the `<coefficient> <pauli_string>` one-term-per-line format.

    `#` starts a comment; blank lines are ignored.
    """
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParameterDomainError(
                f"line {lineno}: expected '<coefficient> <pauli_string>', got {raw!r}"
            )
        try:
            coeff = float(parts[0])
        except ValueError as exc:
            raise ParameterDomainError(f"line {lineno}: bad coefficient {parts[0]!r}") from exc
        terms.append((coeff, parts[1]))
    return PauliSum.from_terms(terms)


def load_hamiltonian(path) -> PauliSum:
    with open(path, encoding="utf-8") as fh:
        return parse_hamiltonian(fh.read())
