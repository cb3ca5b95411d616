"""Generator bases of SU(N).

Two determinations are provided: the generalized Gell-Mann matrices for any
``N >= 2`` and the tensor-product determination of SU(4) built from Pauli
matrices for a pair of qubits.  Every basis is normalized so that
``Tr(L_i L_j) = 2 delta_ij``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional

import numpy as np

from .errors import DimensionError

TOL = 1e-12

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def c_const(n: int) -> float:
    """Scale factor ``sqrt(N(N-1)/2)`` tying Bloch vectors to density matrices."""
    return float(np.sqrt(n * (n - 1) / 2))


@dataclass(frozen=True)
class GeneratorBasis:
    """Ordered set of ``N**2 - 1`` Hermitian, traceless generators.

    ``matrices`` has shape ``(N**2 - 1, N, N)``.  ``determination`` is
    ``"gellmann"`` or ``"tensor"``; ``factors`` holds ``(dA, dB)`` for the
    latter.
    """

    n: int
    matrices: np.ndarray = field(repr=False)
    determination: str = "gellmann"
    factors: Optional[tuple[int, int]] = None

    def __post_init__(self):
        m = np.asarray(self.matrices, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrices", m)

    @property
    def c(self) -> float:
        return c_const(self.n)

    @property
    def size(self) -> int:
        return self.n * self.n - 1

    def __len__(self) -> int:
        return len(self.matrices)

    def __getitem__(self, i):
        return self.matrices[i]


def build_gell_mann(n: int) -> GeneratorBasis:
    """Generalized Gell-Mann basis of SU(n).

    Ordering: symmetric ``E_jk + E_kj`` for ``j < k``, then antisymmetric
    ``-i(E_jk - E_kj)``, then the ``n - 1`` diagonal matrices.  For ``n = 2``
    this is exactly ``(sigma_x, sigma_y, sigma_z)``.
    """
    if int(n) != n or n < 2:
        raise DimensionError(f"invalid dimension {n!r}: need N >= 2")
    n = int(n)
    pairs = list(combinations(range(n), 2))
    mats = []
    for j, k in pairs:
        m = np.zeros((n, n), dtype=complex)
        m[j, k] = m[k, j] = 1
        mats.append(m)
    for j, k in pairs:
        m = np.zeros((n, n), dtype=complex)
        m[j, k] = -1j
        m[k, j] = 1j
        mats.append(m)
    for l in range(1, n):
        d = np.zeros(n)
        d[:l] = 1
        d[l] = -l
        mats.append(np.diag(np.sqrt(2 / (l * (l + 1))) * d).astype(complex))
    return GeneratorBasis(n, np.array(mats), "gellmann")


def build_tensor_basis(dA: int, dB: int) -> GeneratorBasis:
    """Tensor determination of SU(4) for two qubits.

    Order: ``s_a x I`` (a = 1..3), ``I x s_b`` (b = 1..3), then
    ``s_a x s_b`` row-major in ``(a, b)``; all scaled by ``1/sqrt(2)``.
    Only ``dA = dB = 2`` is supported.
    """
    if (dA, dB) != (2, 2):
        raise DimensionError(f"unsupported tensor dimensions ({dA}, {dB}); only (2, 2) is implemented")
    eye = np.eye(2)
    mats = [np.kron(s, eye) for s in PAULI]
    mats += [np.kron(eye, s) for s in PAULI]
    mats += [np.kron(PAULI[a], PAULI[b]) for a, b in product(range(3), repeat=2)]
    return GeneratorBasis(4, np.array(mats) / np.sqrt(2), "tensor", (2, 2))


@dataclass(frozen=True)
class ValidationReport:
    hermiticity: float
    trace: float
    gram: float
    count_ok: bool
    tol: float = TOL

    @property
    def passed(self) -> bool:
        return self.count_ok and max(self.hermiticity, self.trace, self.gram) <= self.tol

    def to_dict(self) -> dict:
        return {
            "hermiticity": self.hermiticity,
            "trace": self.trace,
            "gram": self.gram,
            "count_ok": self.count_ok,
            "tol": self.tol,
            "pass": self.passed,
        }


def gram_matrix(matrices: np.ndarray) -> np.ndarray:
    """``G[i, j] = Tr(L_i L_j)``."""
    m = np.asarray(matrices)
    return np.einsum("iab,jba->ij", m, m)


def verify_basis(basis: GeneratorBasis, tol: float = TOL) -> ValidationReport:
    m = basis.matrices
    herm = float(np.max(np.abs(m - np.conj(np.transpose(m, (0, 2, 1))))))
    tr = float(np.max(np.abs(np.trace(m, axis1=1, axis2=2))))
    g = gram_matrix(m)
    gram = float(np.max(np.abs(g - 2 * np.eye(len(m)))))
    return ValidationReport(herm, tr, gram, len(m) == basis.n**2 - 1, tol)


def basis_to_json(basis: GeneratorBasis) -> list:
    """Matrices as nested lists of ``[re, im]`` pairs, row-major."""
    return [[[[float(z.real), float(z.imag)] for z in row] for row in mat] for mat in basis.matrices]


def basis_from_name(name: str, n: Optional[int] = None) -> GeneratorBasis:
    if name == "gellmann":
        return build_gell_mann(2 if n is None else n)
    if name == "tensor":
        if n not in (4, None):
            raise DimensionError("tensor basis is only defined for N = 4 (2 x 2)")
        return build_tensor_basis(2, 2)
    raise ValueError(f"unknown basis {name!r}")
