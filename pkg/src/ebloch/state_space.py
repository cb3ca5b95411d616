"""Density matrices and Bloch vectors.

States are plain numpy arrays: an ``(N, N)`` complex matrix or a real vector of
length ``N**2 - 1``.  The map between them is

    D(r) = (I + c_N r . L) / N,     r_i = N / (2 c_N) * Tr(D L_i),

which is linear and exact for any generator basis normalized to
``Tr(L_i L_j) = 2 delta_ij``.
"""
from __future__ import annotations

import enum

import numpy as np

from .errors import DimensionError, NonHermitianError
from .su_basis import GeneratorBasis

PSD_TOL = 1e-10
TOL = 1e-12


class StateKind(enum.Enum):
    VECTOR = "vector-state"
    OPERATOR = "operator-state"
    NOT_A_STATE = "not-a-state"


def dim_from_bloch(r) -> int:
    n = int(round(np.sqrt(len(r) + 1)))
    if n * n - 1 != len(r):
        raise DimensionError(f"length {len(r)} is not N^2 - 1 for any N")
    return n


def to_bloch(D, basis: GeneratorBasis) -> np.ndarray:
    D = np.asarray(D, dtype=complex)
    if D.shape != (basis.n, basis.n):
        raise DimensionError(f"matrix shape {D.shape} does not match basis dimension {basis.n}")
    tr = np.einsum("ab,iba->i", D, basis.matrices).real
    return basis.n / (2 * basis.c) * tr


def from_bloch(r, basis: GeneratorBasis) -> np.ndarray:
    """Hermitian, unit-trace matrix for ``r``.  Not necessarily positive."""
    r = np.asarray(r, dtype=float)
    if r.shape != (basis.size,):
        raise DimensionError(f"Bloch vector of length {r.size} does not match basis of size {basis.size}")
    n = basis.n
    return (np.eye(n) + basis.c * np.tensordot(r, basis.matrices, axes=1)) / n


def check_density(D, tol: float = TOL, psd_tol: float = PSD_TOL) -> np.ndarray:
    """Validate ``D`` as a density matrix and return it as a complex array."""
    D = np.asarray(D, dtype=complex)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise DimensionError(f"density matrix must be square, got shape {D.shape}")
    if np.max(np.abs(D - D.conj().T)) > tol:
        raise NonHermitianError("density matrix is not Hermitian")
    tr = np.trace(D).real
    if abs(tr - 1) > tol:
        raise ValueError(f"density matrix trace is {tr!r}, expected 1")
    w = np.linalg.eigvalsh(D)
    if w[0] < -psd_tol:
        raise ValueError(f"density matrix is not positive semi-definite (min eigenvalue {w[0]:.3g})")
    return D


def classify(r, basis: GeneratorBasis, tol: float = PSD_TOL) -> StateKind:
    w = np.linalg.eigvalsh(from_bloch(r, basis))
    if w[0] < -tol:
        return StateKind.NOT_A_STATE
    if abs(np.linalg.norm(r) - 1) <= tol:
        return StateKind.VECTOR
    return StateKind.OPERATOR


def purity(r) -> float:
    """``Tr(D^2) = (1 + (N - 1)|r|^2) / N``."""
    r = np.asarray(r, dtype=float)
    n = dim_from_bloch(r)
    return float((1 + (n - 1) * (r @ r)) / n)


def random_pure(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random rank-one projector."""
    psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_mixed(n: int, rng: np.random.Generator) -> np.ndarray:
    """Hilbert-Schmidt random density matrix ``G G^dag / Tr(G G^dag)``."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    D = g @ g.conj().T
    D = D / np.trace(D).real
    return (D + D.conj().T) / 2
