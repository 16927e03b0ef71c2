"""Seed derivation, alias sampling and an order-preserving parallel map.

Every trajectory ``i`` of a run with master seed ``s`` draws from its own
Philox stream keyed by ``SeedSequence(s, spawn_key=(i,))``. Results never depend
on how trajectories are distributed over worker processes.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np


def trajectory_seed(master_seed: int, index: int) -> int:
    """64-bit seed of trajectory ``index``."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(index,))
    return int(ss.generate_state(1, np.uint64)[0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


class AliasTable:
    """Walker/Vose alias table: O(1) draws from a finite distribution."""

    def __init__(self, probs):
        p = np.asarray(probs, dtype=float)
        if p.ndim != 1 or len(p) == 0 or (p < 0).any():
            raise ValueError("need a non-empty vector of non-negative weights")
        n = len(p)
        scaled = p * (n / p.sum())
        prob = np.ones(n)
        alias = np.arange(n)
        small = [i for i in range(n) if scaled[i] < 1.0]
        large = [i for i in range(n) if scaled[i] >= 1.0]
        while small and large:
            s, l = small.pop(), large.pop()
            prob[s] = scaled[s]
            alias[s] = l
            scaled[l] += scaled[s] - 1.0
            (small if scaled[l] < 1.0 else large).append(l)
        self.prob = prob
        self.alias = alias
        self.n = n

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        x = rng.random(size) * self.n
        i = np.minimum(x.astype(np.int64), self.n - 1)
        return np.where(x - i < self.prob[i], i, self.alias[i])


def _run_chunk(args):
    fn, chunk = args
    return [fn(i) for i in chunk]


def pmap(fn, items, workers: int = 1) -> list:
    """``[fn(i) for i in items]``, optionally over processes; output order is input order."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(i) for i in items]
    nchunks = min(len(items), 4 * workers)
    bounds = np.linspace(0, len(items), nchunks + 1).astype(int)
    chunks = [items[bounds[k]:bounds[k + 1]] for k in range(nchunks)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_run_chunk, [(fn, c) for c in chunks]))
    return [x for part in parts for x in part]
