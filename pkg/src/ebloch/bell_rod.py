"""Rigid-rod model of sequential spin measurements on a singlet pair.

Both particles start at the centre of their Bloch balls.  The particle
measured first undergoes an ordinary hidden measurement from ``r = 0``.  The
rod then pushes its partner to the antipode of the vertex just reached, the
rod is released, and the partner is measured as a pure state along its own
axis.  This reproduces ``E[sA sB] = -nA . nB``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .hidden_measurement import SNAP, project_onto_simplex, regions_of, run_measurement, sample_lambdas
from .observables import MeasurementSimplex, measurement_simplex, spin_axis, spin_observable
from .rng import map_chunks
from .su_basis import build_gell_mann

A_FIRST = "A"
B_FIRST = "B"

# Coplanar axes maximizing |E(a,b) - E(a,b') + E(a',b) + E(a',b')| when E = -cos(a - b).
OPTIMAL_ANGLES = (0.0, 90.0, 45.0, 135.0)


@dataclass(frozen=True)
class RodConfig:
    nA: np.ndarray
    nB: np.ndarray
    order: str = A_FIRST

    def __post_init__(self):
        for name in ("nA", "nB"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,) or abs(np.linalg.norm(v) - 1) > 1e-12:
                raise ValueError(f"{name} must be a unit 3-vector")
            object.__setattr__(self, name, v)
        if self.order not in (A_FIRST, B_FIRST):
            raise ValueError(f"order must be 'A' or 'B', got {self.order!r}")

    @classmethod
    def from_angles(cls, theta_a: float, theta_b: float, order: str = A_FIRST) -> "RodConfig":
        return cls(spin_axis(theta_a), spin_axis(theta_b), order)


@dataclass(frozen=True)
class TrialOutcome:
    sA: int
    sB: int


@dataclass(frozen=True)
class CorrelationEstimate:
    E: float
    trials: int
    std_error: float


@dataclass
class JointTable:
    """Counts indexed ``[sA, sB]`` with index 0 for +1 and 1 for -1."""

    counts: np.ndarray
    nA: np.ndarray = field(repr=False)
    nB: np.ndarray = field(repr=False)

    @property
    def trials(self) -> int:
        return int(self.counts.sum())

    @property
    def frequencies(self) -> np.ndarray:
        return self.counts / self.trials

    @property
    def oracle(self) -> np.ndarray:
        s = np.array([1, -1])
        return (1 - np.outer(s, s) * float(self.nA @ self.nB)) / 4

    @property
    def z_scores(self) -> np.ndarray:
        p, T = self.oracle, self.trials
        sd = np.sqrt(p * (1 - p) / T)
        dev = self.frequencies - p
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(sd > 0, dev / np.where(sd > 0, sd, 1.0), np.where(dev == 0, 0.0, np.inf))

    @property
    def marginals(self) -> tuple[np.ndarray, np.ndarray]:
        f = self.frequencies
        return f.sum(axis=1), f.sum(axis=0)

    def correlation(self) -> CorrelationEstimate:
        f = self.frequencies
        E = float(f[0, 0] + f[1, 1] - f[0, 1] - f[1, 0])
        return CorrelationEstimate(E, self.trials, float(np.sqrt(max(0.0, 1 - E * E) / self.trials)))

    def to_dict(self) -> dict:
        labels = ("+", "-")
        cells = {}
        for i, a in enumerate(labels):
            for j, b in enumerate(labels):
                z = float(self.z_scores[i, j])
                cells[a + b] = {
                    "count": int(self.counts[i, j]),
                    "frequency": float(self.frequencies[i, j]),
                    "oracle": float(self.oracle[i, j]),
                    "z": z if np.isfinite(z) else None,
                }
        est = self.correlation()
        return {"trials": self.trials, "cells": cells, "E": est.E, "stderr": est.std_error}


@lru_cache(maxsize=None)
def _qubit_basis():
    return build_gell_mann(2)


def qubit_simplex(n) -> MeasurementSimplex:
    """Simplex of ``sigma . n``; vertex 0 is the +1 outcome."""
    return measurement_simplex(spin_observable(n), _qubit_basis())


def _sign(i):
    return np.where(np.asarray(i) == 0, 1, -1)


def rod_transfer(sx_first: MeasurementSimplex, outcome: int) -> np.ndarray:
    """Partner's Bloch vector after the rod acts: antipode of the reached vertex."""
    return -sx_first.vertices[outcome]


def _axes(cfg: RodConfig):
    return (cfg.nA, cfg.nB) if cfg.order == A_FIRST else (cfg.nB, cfg.nA)


def run_rod_trial(cfg: RodConfig, rng: np.random.Generator) -> TrialOutcome:
    first_axis, second_axis = _axes(cfg)
    sx1, sx2 = qubit_simplex(first_axis), qubit_simplex(second_axis)
    first = run_measurement(np.zeros(3), sx1, rng)
    second = run_measurement(rod_transfer(sx1, first.outcome), sx2, rng)
    s1, s2 = int(_sign(first.outcome)), int(_sign(second.outcome))
    return TrialOutcome(s1, s2) if cfg.order == A_FIRST else TrialOutcome(s2, s1)


def rod_batch(cfg: RodConfig, size: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``run_rod_trial``: arrays of ``sA`` and ``sB``."""
    first_axis, second_axis = _axes(cfg)
    sx1, sx2 = qubit_simplex(first_axis), qubit_simplex(second_axis)
    b1 = project_onto_simplex(np.zeros(3), sx1).barycentric
    i1 = regions_of(sample_lambdas(2, size, rng), b1)
    partner = -sx1.vertices[i1]
    b2 = (1 + partner @ sx2.vertices.T) / 2
    b2[np.abs(b2) <= SNAP] = 0.0
    i2 = regions_of(sample_lambdas(2, size, rng), b2)
    s1, s2 = _sign(i1), _sign(i2)
    return (s1, s2) if cfg.order == A_FIRST else (s2, s1)


def _joint_counts(cfg: RodConfig, trials: int, seed: int, key=(), threads: int = 1) -> np.ndarray:
    def chunk(size, rng):
        sA, sB = rod_batch(cfg, size, rng)
        cell = 2 * (sA < 0) + (sB < 0)
        return np.bincount(cell, minlength=4).reshape(2, 2)

    return np.sum(map_chunks(chunk, trials, seed, key, threads), axis=0)


def joint_distribution(cfg: RodConfig, trials: int, seed: int, threads: int = 1, key=()) -> JointTable:
    if trials < 1:
        raise ValueError("trials must be positive")
    return JointTable(_joint_counts(cfg, trials, seed, key, threads), cfg.nA, cfg.nB)


def correlation(cfg: RodConfig, trials: int, seed: int, threads: int = 1, key=()) -> CorrelationEstimate:
    return joint_distribution(cfg, trials, seed, threads, key).correlation()


def chsh_report(a, a_prime, b, b_prime, trials: int, seed: int, threads: int = 1) -> dict:
    """Four independent correlation runs combined into ``S``."""
    settings = {"ab": (a, b), "ab'": (a, b_prime), "a'b": (a_prime, b), "a'b'": (a_prime, b_prime)}
    est = {
        name: correlation(RodConfig(x, y), trials, seed, threads, key=(k,))
        for k, (name, (x, y)) in enumerate(settings.items())
    }
    S = abs(est["ab"].E - est["ab'"].E + est["a'b"].E + est["a'b'"].E)
    stderr = float(np.sqrt(sum(e.std_error**2 for e in est.values())))
    return {
        "schema": "ebr/1",
        "trials": int(trials),
        "seed": int(seed),
        "E": {name: e.E for name, e in est.items()},
        "E_stderr": {name: e.std_error for name, e in est.items()},
        "S": float(S),
        "stderr": stderr,
    }


def chsh(a, a_prime, b, b_prime, trials: int, seed: int, threads: int = 1) -> float:
    return chsh_report(a, a_prime, b, b_prime, trials, seed, threads)["S"]


def order_invariance_check(cfg: RodConfig, trials: int, seed: int, threads: int = 1, zmax: float = 4.0) -> dict:
    """Run both measurement orders with independent streams and compare each to the oracle."""
    tables = {}
    for k, order in enumerate((A_FIRST, B_FIRST)):
        c = RodConfig(cfg.nA, cfg.nB, order)
        tables[order] = joint_distribution(c, trials, seed, threads, key=(k,))
    ok = all(bool(np.all(np.abs(t.z_scores) <= zmax)) for t in tables.values())
    return {
        "schema": "ebr/1",
        "seed": int(seed),
        "orders": {o: t.to_dict() for o, t in tables.items()},
        "max_abs_z": {o: float(np.max(np.abs(t.z_scores))) for o, t in tables.items()},
        "pass": ok,
    }
