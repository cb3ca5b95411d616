"""Two-stage hidden-measurement model of a projective measurement.

Stage one is deterministic: the state point falls orthogonally onto the
measurement simplex, landing on ``r_par`` whose barycentric coordinates are the
Born probabilities ``Tr(D P_i)``.  The off-diagonal elements of the state in
the eigenbasis shrink linearly while the diagonal is untouched.

Stage two is a weighted symmetry breaking.  ``r_par`` cuts the simplex into
``N`` regions ``A_i = hull({r_par} + {n_j : j != i})``.  A breaking point is
drawn uniformly on the simplex and the region holding it names the outcome;
the state is then drawn to vertex ``n_i``.  ``A_i`` has measure
``r_par_i * |simplex|``, so uniform sampling reproduces the Born rule.

In barycentric coordinates a point ``lam`` lies in ``A_i`` exactly when
``i = argmin_j lam_j / r_par_j``: writing ``lam = t r_par + sum_{j != i} s_j e_j``
gives ``t = lam_i / r_par_i`` and ``s_j = lam_j - t r_par_j``, which are all
non-negative only for the smallest ratio.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Optional

import numpy as np
from scipy import stats

from .errors import EBlochError, NotAStateError
from .observables import MeasurementSimplex, OutcomeGrouping
from .rng import map_chunks
from .state_space import PSD_TOL, StateKind, classify, from_bloch

SNAP = 1e-12


@dataclass(frozen=True)
class OnSimplexState:
    r_par: np.ndarray
    barycentric: np.ndarray
    r_perp: np.ndarray


@dataclass(frozen=True)
class OutcomeRecord:
    """One simulated measurement.

    ``outcome`` is the refined (non-degenerate) outcome index picked by the
    breaking point; ``group`` is the fused outcome it belongs to, when a
    grouping was used.  ``subsimplex`` is the barycentric point on the face
    of the fused group reached before purification.
    """

    lam: np.ndarray
    outcome: int
    post_state: np.ndarray = field(repr=False)
    probability: float
    group: Optional[int] = None
    subsimplex: Optional[np.ndarray] = None


def _barycentric(r, sx: MeasurementSimplex) -> np.ndarray:
    n = sx.n
    b = (1 + (n - 1) * (sx.vertices @ np.asarray(r, dtype=float))) / n
    b[np.abs(b) <= SNAP] = 0.0
    return b / b.sum()


def project_onto_simplex(r, sx: MeasurementSimplex, check: bool = True) -> OnSimplexState:
    """Orthogonal fall of ``r`` onto the simplex of ``sx``."""
    r = np.asarray(r, dtype=float)
    if check and classify(r, sx.basis, PSD_TOL) is StateKind.NOT_A_STATE:
        raise NotAStateError("Bloch vector does not represent a state")
    b = _barycentric(r, sx)
    r_par = b @ sx.vertices
    return OnSimplexState(r_par, b, r - r_par)


def born_probabilities(r, sx: MeasurementSimplex) -> np.ndarray:
    return project_onto_simplex(r, sx).barycentric


def simplex_measure(n: int) -> float:
    """Volume of the regular simplex with ``n`` unit vertices in the Bloch sphere."""
    d = n - 1
    edge = np.sqrt(2 * n / (n - 1))
    return float(edge**d / factorial(d) * np.sqrt((d + 1) / 2**d))


def region_measures(r, sx: MeasurementSimplex) -> np.ndarray:
    """Measures of the regions ``A_i`` cut out by the on-simplex point."""
    return simplex_measure(sx.n) * born_probabilities(r, sx)


def trajectory_stage1(r, sx: MeasurementSimplex, tau: float) -> np.ndarray:
    """Point ``(1 - tau) r + tau r_par`` on the orthogonal fall."""
    if not 0 <= tau <= 1:
        raise ValueError(f"tau must lie in [0, 1], got {tau}")
    on = project_onto_simplex(r, sx)
    return (1 - tau) * np.asarray(r, dtype=float) + tau * on.r_par


def trajectory_stage2(on: OnSimplexState, sx: MeasurementSimplex, i: int, tau: float) -> np.ndarray:
    """Point ``(1 - tau) r_par + tau n_i`` on the collapse towards vertex ``i``."""
    if not 0 <= tau <= 1:
        raise ValueError(f"tau must lie in [0, 1], got {tau}")
    if not 0 <= i < sx.n:
        raise IndexError(f"outcome index {i} out of range for N = {sx.n}")
    return (1 - tau) * on.r_par + tau * sx.vertices[i]


def eigenbasis_matrix(r, sx: MeasurementSimplex) -> np.ndarray:
    """``D(r)`` written in the measurement eigenbasis."""
    v = sx.decomposition.vectors
    return v.conj().T @ from_bloch(r, sx.basis) @ v


def sample_lambdas(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` uniform points on the simplex, as barycentric rows (flat Dirichlet)."""
    e = rng.standard_exponential((size, n))
    return e / e.sum(axis=1, keepdims=True)


def sample_lambda(sx: MeasurementSimplex, rng: np.random.Generator) -> np.ndarray:
    return sample_lambdas(sx.n, 1, rng)[0]


def regions_of(lams: np.ndarray, barycentric) -> np.ndarray:
    """Region index for each row of ``lams``; ties go to the lowest index."""
    b = np.asarray(barycentric, dtype=float)
    lams = np.asarray(lams, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(b > 0, lams / np.where(b > 0, b, 1.0), np.inf)
    return np.argmin(ratio, axis=-1)


def region_of(lam, on: OnSimplexState) -> int:
    return int(regions_of(np.asarray(lam)[None, :], on.barycentric)[0])


def run_measurement(r, sx: MeasurementSimplex, rng: np.random.Generator) -> OutcomeRecord:
    on = project_onto_simplex(r, sx)
    lam = sample_lambda(sx, rng)
    i = region_of(lam, on)
    return OutcomeRecord(lam, i, sx.projectors[i], float(on.barycentric[i]))


def luders(D, P) -> tuple[np.ndarray, float]:
    """Post-measurement state ``P D P / Tr(P D)`` and the probability ``Tr(P D)``."""
    p = float(np.trace(P @ D).real)
    if p <= 0:
        raise EBlochError("zero-probability outcome group reached")
    return P @ D @ P / p, p


def run_degenerate(
    r, sx: MeasurementSimplex, grouping: OutcomeGrouping, rng: np.random.Generator
) -> OutcomeRecord:
    """Measurement with fused regions for degenerate eigenvalues.

    The breaking point picks a refined region; the reported outcome is its
    group ``M``.  The post-state follows the projection postulate with
    ``P_M = sum_{k in M} P_k``.
    """
    on = project_onto_simplex(r, sx)
    lam = sample_lambda(sx, rng)
    i = region_of(lam, on)
    g = grouping.group_of(i)
    members = list(grouping.groups[g])
    P = sx.projectors[members].sum(axis=0)
    post, _ = luders(from_bloch(r, sx.basis), P)
    p = float(on.barycentric[members].sum())
    sub = np.zeros(sx.n)
    sub[members] = on.barycentric[members] / p
    return OutcomeRecord(lam, i, post, p, g, sub)


@dataclass
class FrequencyReport:
    counts: np.ndarray
    probabilities: np.ndarray
    eigenvalues: tuple[float, ...]
    groups: tuple[tuple[int, ...], ...]
    trials: int
    seed: int

    @property
    def frequencies(self) -> np.ndarray:
        return self.counts / self.trials

    @property
    def z_scores(self) -> np.ndarray:
        T, p = self.trials, self.probabilities
        dev = self.counts - T * p
        sd = np.sqrt(T * p * (1 - p))
        with np.errstate(divide="ignore", invalid="ignore"):
            z = np.where(sd > 0, dev / np.where(sd > 0, sd, 1.0), np.where(dev == 0, 0.0, np.inf))
        return z

    @property
    def chi_square(self) -> float:
        T, p, c = self.trials, self.probabilities, self.counts
        if np.any((p <= 0) & (c > 0)):
            return float("inf")
        m = p > 0
        return float(np.sum((c[m] - T * p[m]) ** 2 / (T * p[m])))

    @property
    def p_value(self) -> float:
        dof = int(np.count_nonzero(self.probabilities > 0)) - 1
        if dof <= 0:
            return 1.0 if self.chi_square == 0 else 0.0
        return float(stats.chi2.sf(self.chi_square, dof))

    def to_dict(self) -> dict:
        def num(x):
            x = float(x)
            return x if np.isfinite(x) else None

        outcomes = [
            {
                "group": list(g),
                "eigenvalue": v,
                "count": int(c),
                "frequency": num(f),
                "probability": num(p),
                "z": num(z),
            }
            for g, v, c, f, p, z in zip(
                self.groups, self.eigenvalues, self.counts, self.frequencies, self.probabilities, self.z_scores
            )
        ]
        return {
            "schema": "ebr/1",
            "trials": self.trials,
            "seed": self.seed,
            "outcomes": outcomes,
            "chi_square": num(self.chi_square),
            "p_value": num(self.p_value),
        }


def monte_carlo_report(
    r,
    sx: MeasurementSimplex,
    grouping: Optional[OutcomeGrouping] = None,
    trials: int = 100_000,
    seed: int = 0,
    threads: int = 1,
) -> FrequencyReport:
    """Frequencies of ``trials`` independent measurements against the Born rule."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    if grouping is None:
        grouping = OutcomeGrouping.singletons(sx.decomposition.eigenvalues)
    on = project_onto_simplex(r, sx)
    labels = grouping.labels(sx.n)
    ngroups = len(grouping.groups)

    def chunk(size, rng):
        idx = regions_of(sample_lambdas(sx.n, size, rng), on.barycentric)
        return np.bincount(labels[idx], minlength=ngroups)

    counts = np.sum(map_chunks(chunk, trials, seed, threads=threads), axis=0)
    probs = np.array([on.barycentric[list(g)].sum() for g in grouping.groups])
    return FrequencyReport(counts, probs, grouping.values, grouping.groups, int(trials), int(seed))
