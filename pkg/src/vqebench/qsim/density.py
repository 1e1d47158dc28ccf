"""Density matrices and operator embedding on qubit subsets."""
from __future__ import annotations

import numpy as np

from ..errors import DimensionError

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
EIGVAL_TOL = 1e-9


def basis_state(index: int, n_qubits: int) -> np.ndarray:
    """Density matrix |index><index| in the computational basis."""
    dim = 2 ** n_qubits
    if not 0 <= index < dim:
        raise DimensionError(f"basis index {index} out of range for {n_qubits} qubits")
    rho = np.zeros((dim, dim), dtype=complex)
    rho[index, index] = 1.0
    return rho


def pure_state(vec: np.ndarray) -> np.ndarray:
    """Density matrix of a (normalized) state vector."""
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ rho)))


def check_density(rho: np.ndarray) -> None:
    """Raise if rho violates the density-matrix invariants."""
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"density matrix must be square, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
        raise DimensionError("density matrix is not Hermitian within tolerance")
    if abs(np.trace(rho).real - 1.0) > TRACE_TOL or abs(np.trace(rho).imag) > TRACE_TOL:
        raise DimensionError("density matrix trace differs from 1")
    if np.min(np.linalg.eigvalsh(rho)) < -EIGVAL_TOL:
        raise DimensionError("density matrix has a negative eigenvalue beyond roundoff")


def n_qubits_of(rho: np.ndarray) -> int:
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    if 2 ** n != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return n


def embed_operator(op: np.ndarray, qubits, n_qubits: int) -> np.ndarray:
    """Embed an operator acting on `qubits` into the full 2^n space.

    `op` acts on len(qubits) qubits, its tensor slots ordered as listed.
    """
    k = len(qubits)
    if op.shape != (2 ** k, 2 ** k):
        raise DimensionError(f"operator shape {op.shape} does not match {k} qubits")
    if len(set(qubits)) != k or any(not 0 <= q < n_qubits for q in qubits):
        raise DimensionError(f"bad qubit list {qubits} for {n_qubits} qubits")
    if k == n_qubits and list(qubits) == list(range(n_qubits)):
        return op
    rest = [q for q in range(n_qubits) if q not in qubits]
    full = np.kron(op, np.eye(2 ** (n_qubits - k), dtype=complex))
    # Axis i of the tensor currently holds (list(qubits)+rest)[i]; permute so
    # that axis q holds qubit q, for rows and columns alike.
    order = list(qubits) + rest
    perm = [order.index(q) for q in range(n_qubits)]
    t = full.reshape((2,) * (2 * n_qubits))
    t = t.transpose(perm + [n_qubits + p for p in perm])
    return np.ascontiguousarray(t.reshape(2 ** n_qubits, 2 ** n_qubits))


def partial_trace(rho: np.ndarray, keep, n_qubits: int) -> np.ndarray:
    """Reduced density matrix over the `keep` qubits (in the given order)."""
    keep = list(keep)
    t = rho.reshape((2,) * (2 * n_qubits))
    traced = [q for q in range(n_qubits) if q not in keep]
    for q in sorted(traced, reverse=True):
        t = np.trace(t, axis1=q, axis2=q + t.ndim // 2)
    # remaining axes are the kept qubits in increasing order
    kept_sorted = sorted(keep)
    perm = [kept_sorted.index(q) for q in keep]
    k = len(keep)
    t = t.transpose(perm + [k + p for p in perm])
    return t.reshape(2 ** k, 2 ** k)
