"""Spectral decomposition of observables and the measurement simplex.

The eigenprojectors ``P_i`` of an observable map to unit Bloch vectors
``n_i`` with ``n_i . n_j = (N delta_ij - 1) / (N - 1)``: the vertices of a
regular simplex inscribed in the generalized Bloch sphere.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NonHermitianError
from .state_space import to_bloch
from .su_basis import PAULI, GeneratorBasis

DEG_TOL = 1e-9


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (descending) with orthonormal eigenvectors as columns of ``vectors``."""

    eigenvalues: np.ndarray
    vectors: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def projectors(self) -> np.ndarray:
        v = self.vectors
        return np.einsum("ai,bi->iab", v, v.conj())

    def reconstruct(self) -> np.ndarray:
        return np.einsum("i,iab->ab", self.eigenvalues, self.projectors)


@dataclass(frozen=True)
class MeasurementSimplex:
    """Vertices ``n_i`` (rows of ``vertices``) of the simplex of a measurement."""

    vertices: np.ndarray
    decomposition: SpectralDecomposition = field(repr=False)
    basis: GeneratorBasis = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def projectors(self) -> np.ndarray:
        return self.decomposition.projectors

    def gram(self) -> np.ndarray:
        return self.vertices @ self.vertices.T


@dataclass(frozen=True)
class OutcomeGrouping:
    """Partition of outcome indices (0-based) by eigenvalue."""

    groups: tuple[tuple[int, ...], ...]
    values: tuple[float, ...]

    @classmethod
    def singletons(cls, eigenvalues) -> "OutcomeGrouping":
        return cls(tuple((i,) for i in range(len(eigenvalues))), tuple(float(o) for o in eigenvalues))

    def group_of(self, i: int) -> int:
        for g, members in enumerate(self.groups):
            if i in members:
                return g
        raise IndexError(i)

    def labels(self, n: int) -> np.ndarray:
        """Array mapping each refined outcome to its group index."""
        lab = np.empty(n, dtype=np.intp)
        for g, members in enumerate(self.groups):
            lab[list(members)] = g
        return lab


def spectral_decompose(O, tol: float = 1e-10) -> SpectralDecomposition:
    O = np.asarray(O, dtype=complex)
    if O.ndim != 2 or O.shape[0] != O.shape[1]:
        raise DimensionError(f"observable must be square, got shape {O.shape}")
    if np.max(np.abs(O - O.conj().T)) > tol:
        raise NonHermitianError("observable is not Hermitian")
    w, v = np.linalg.eigh((O + O.conj().T) / 2)
    order = np.argsort(-w, kind="stable")
    return SpectralDecomposition(w[order], v[:, order])


def simplex_of(decomp: SpectralDecomposition, basis: GeneratorBasis) -> MeasurementSimplex:
    if decomp.n != basis.n:
        raise DimensionError(f"observable dimension {decomp.n} does not match basis dimension {basis.n}")
    verts = np.array([to_bloch(P, basis) for P in decomp.projectors])
    return MeasurementSimplex(verts, decomp, basis)


def measurement_simplex(O, basis: GeneratorBasis) -> MeasurementSimplex:
    return simplex_of(spectral_decompose(O), basis)


def group_degenerate(decomp: SpectralDecomposition, deg_tol: float = DEG_TOL) -> OutcomeGrouping:
    """Chain eigenvalues (already sorted) whose neighbours differ by at most ``deg_tol``.

    ``deg_tol`` is relative to the largest absolute eigenvalue when that
    exceeds one.
    """
    o = decomp.eigenvalues
    scale = max(1.0, float(np.max(np.abs(o)))) if len(o) else 1.0
    groups, values = [[0]], [float(o[0])]
    for i in range(1, len(o)):
        if abs(o[i] - o[groups[-1][-1]]) <= deg_tol * scale:
            groups[-1].append(i)
        else:
            groups.append([i])
            values.append(float(o[i]))
    return OutcomeGrouping(tuple(tuple(g) for g in groups), tuple(values))


def spin_axis(theta_deg: float) -> np.ndarray:
    """Unit vector at ``theta_deg`` from the z axis in the x-z plane."""
    t = np.deg2rad(theta_deg)
    return np.array([np.sin(t), 0.0, np.cos(t)])


def spin_observable(n) -> np.ndarray:
    """``sigma . n`` for a real 3-vector ``n``."""
    return np.tensordot(np.asarray(n, dtype=float), PAULI, axes=1)


def spin_product(nA, nB) -> np.ndarray:
    return np.kron(spin_observable(nA), spin_observable(nB))
