"""Seeded, splittable random streams.

Every stochastic routine takes a :class:`numpy.random.Generator`.  Bulk Monte
Carlo runs are cut into fixed-size chunks, and chunk ``k`` of a run keyed by
``key`` always draws from ``stream(seed, *key, k)``.  Results therefore do not
depend on how many worker threads process the chunks.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

import numpy as np

CHUNK = 1 << 16

T = TypeVar("T")


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for ``(seed, *key)``; equal inputs give equal streams."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def chunk_sizes(trials: int, chunk: int = CHUNK) -> list[int]:
    full, rest = divmod(int(trials), chunk)
    return [chunk] * full + ([rest] if rest else [])


def map_chunks(
    fn: Callable[[int, np.random.Generator], T],
    trials: int,
    seed: int,
    key: Sequence[int] = (),
    threads: int = 1,
) -> list[T]:
    """Apply ``fn(size, rng)`` to each chunk of a run, in chunk order."""
    jobs = [(size, stream(seed, *key, k)) for k, size in enumerate(chunk_sizes(trials))]
    if threads <= 1 or len(jobs) <= 1:
        return [fn(size, rng) for size, rng in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda job: fn(*job), jobs))

