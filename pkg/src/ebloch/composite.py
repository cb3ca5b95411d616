"""Two-qubit states and the direct-sum split of their 15-dimensional Bloch vector.

In the tensor determination the joint Bloch vector reads
``r = rA/sqrt(3) + rB/sqrt(3) + rcorr`` (an orthogonal direct sum), where
``rA``/``rB`` are the ordinary Bloch vectors of the reduced states and
``rcorr[a, b] = Tr(D s_a x s_b) / sqrt(3)``.

Basis labels ``|+>``, ``|->`` are the computational indices 0 and 1, with
subsystem A as the most significant factor.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .state_space import check_density, random_mixed, random_pure
from .su_basis import GeneratorBasis

SQRT3 = np.sqrt(3.0)


@dataclass(frozen=True)
class BipartiteState:
    joint: np.ndarray
    dA: int = 2
    dB: int = 2

    def __post_init__(self):
        if self.joint.shape != (self.dA * self.dB,) * 2:
            raise DimensionError(f"joint state of shape {self.joint.shape} does not fit {self.dA} x {self.dB}")


@dataclass(frozen=True)
class EntangledParams:
    a1: float
    a2: float
    alpha: float = 0.0

    def __post_init__(self):
        if not (0 <= self.a1 <= 1 and 0 <= self.a2 <= 1):
            raise ValueError("amplitudes a1, a2 must lie in [0, 1]")
        if abs(self.a1**2 + self.a2**2 - 1) > 1e-12:
            raise ValueError(f"a1^2 + a2^2 = {self.a1**2 + self.a2**2!r}, expected 1")


SINGLET = EntangledParams(1 / np.sqrt(2), 1 / np.sqrt(2), np.pi)


@dataclass(frozen=True)
class DecomposedBloch:
    rA: np.ndarray
    rB: np.ndarray
    rcorr: np.ndarray

    @property
    def corr_matrix(self) -> np.ndarray:
        return self.rcorr.reshape(3, 3)

    def reassemble(self) -> np.ndarray:
        return np.concatenate([self.rA / SQRT3, self.rB / SQRT3, self.rcorr])

    def to_dict(self) -> dict:
        return {
            "rA": self.rA.tolist(),
            "rB": self.rB.tolist(),
            "rcorr": self.rcorr.tolist(),
        }


def build_entangled(p: EntangledParams) -> BipartiteState:
    """``|psi> = a1 |+->  +  a2 e^{i alpha} |-+>`` as a projector."""
    psi = np.zeros(4, dtype=complex)
    psi[0b01] = p.a1
    psi[0b10] = p.a2 * np.exp(1j * p.alpha)
    return BipartiteState(np.outer(psi, psi.conj()))


def product_state(DA, DB) -> BipartiteState:
    DA, DB = np.asarray(DA), np.asarray(DB)
    return BipartiteState(np.kron(DA, DB), len(DA), len(DB))


def partial_trace(s: BipartiteState, keep: str) -> np.ndarray:
    """Reduced state of subsystem ``keep`` ("A" or "B")."""
    t = s.joint.reshape(s.dA, s.dB, s.dA, s.dB)
    if keep == "A":
        return np.einsum("ajbj->ab", t)
    if keep == "B":
        return np.einsum("iaib->ab", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def decompose_direct_sum(r, basis: GeneratorBasis) -> DecomposedBloch:
    if basis.determination != "tensor" or basis.factors != (2, 2):
        raise ValueError("direct-sum decomposition needs the 2 x 2 tensor basis")
    r = np.asarray(r, dtype=float)
    if r.shape != (15,):
        raise DimensionError(f"expected a 15-component Bloch vector, got {r.shape}")
    return DecomposedBloch(SQRT3 * r[0:3], SQRT3 * r[3:6], r[6:15].copy())


def is_product(d: DecomposedBloch, tol: float = 1e-10) -> bool:
    return bool(np.max(np.abs(d.corr_matrix - np.outer(d.rA, d.rB) / SQRT3)) <= tol)


def random_bipartite(rng: np.random.Generator, pure: bool = False) -> BipartiteState:
    D = random_pure(4, rng) if pure else random_mixed(4, rng)
    return BipartiteState(check_density(D))
