"""Green kernels of the projected walk and Monte Carlo harmonic extension.

Boundary data are locally constant functions: they read the end to a fixed
depth and the limit configuration on a finite window, so they can be
evaluated exactly on a converged trajectory.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .boundary import STABLE_FRACTION, ConvergenceRecord, simulate_records
from .kernels import tree_walk_visits
from .rng import AliasTable, make_rng, pmap, trajectory_seed
from .tree import ROOT, EndPrefix, FreeProductSignature, TreeVertex, format_vertex, parse_vertex, truncate
from .walk import MeasureSpec, TreeMeasure
from .wreath import BoundaryPoint, Configuration, GroupElement, LamplighterGroup

# --- Green kernel -------------------------------------------------------------


@dataclass
class KernelEstimate:
    x: TreeVertex
    y: TreeVertex
    G_hat: float
    F_hat: float
    G_se: float
    F_se: float
    N: int
    horizon: int
    G_half: float = float("nan")

    @property
    def truncation_suspect(self) -> bool:
        """Visits in the second half of the horizon move the estimate by more than 2 SE."""
        return abs(self.G_hat - self.G_half) > 2 * self.G_se


class _CompiledTreeMeasure:
    def __init__(self, mu: TreeMeasure):
        gens = mu.sig.generators
        self.code = {g: i for i, g in enumerate(gens)}
        self.inv = np.array([self.code[mu.sig.letter_inverse(g)] for g in gens], np.int64)
        width = max(1, max(x.length for x, _ in mu.atoms))
        self.letters = np.full((len(mu.atoms), width), -1, np.int64)
        self.lens = np.zeros(len(mu.atoms), np.int64)
        for i, (x, _) in enumerate(mu.atoms):
            codes = [self.code[l] for l in x.letters]
            self.letters[i, :len(codes)] = codes
            self.lens[i] = len(codes)
        self.table = AliasTable([float(p) for _, p in mu.atoms])

    def encode(self, v: TreeVertex) -> np.ndarray:
        return np.array([self.code[l] for l in v.letters], np.int64)


def _green_one(index, cm, start, targets, target_lens, horizon, master_seed):
    rng = make_rng(trajectory_seed(master_seed, index))
    u = rng.random(horizon)
    return tree_walk_visits(u, cm.table.prob, cm.table.alias, cm.letters, cm.lens, cm.inv,
                            start, targets, target_lens, horizon // 2)


def estimate_green_many(mu_tilde: TreeMeasure, x: TreeVertex, ys: Sequence[TreeVertex], N: int, horizon: int,
                        seed: int, workers: int = 1) -> list[KernelEstimate]:
    """Green kernel and hitting probability from ``x`` to each ``y``, all from the same ``N`` walks."""
    cm = _CompiledTreeMeasure(mu_tilde)
    width = max(1, max(y.length for y in ys))
    targets = np.full((len(ys), width), -1, np.int64)
    target_lens = np.zeros(len(ys), np.int64)
    for k, y in enumerate(ys):
        codes = cm.encode(y)
        targets[k, :len(codes)] = codes
        target_lens[k] = len(codes)
    fn = partial(_green_one, cm=cm, start=cm.encode(x), targets=targets, target_lens=target_lens,
                 horizon=horizon, master_seed=seed)
    res = pmap(fn, range(N), workers)
    visits = np.array([v for v, _ in res], float).reshape(N, len(ys))
    half = np.array([h for _, h in res], float).reshape(N, len(ys))
    hits = (visits > 0).astype(float)
    out = []
    for k, y in enumerate(ys):
        G, F = visits[:, k].mean(), hits[:, k].mean()
        out.append(KernelEstimate(
            x, y, float(G), float(F),
            float(visits[:, k].std(ddof=1) / math.sqrt(N)) if N > 1 else 0.0,
            float(math.sqrt(F * (1 - F) / N)),
            N, horizon, float(half[:, k].mean()),
        ))
    return out


def estimate_green(mu_tilde: TreeMeasure, x: TreeVertex, y: TreeVertex, N: int, horizon: int, seed: int,
                   workers: int = 1) -> KernelEstimate:
    """Mean number of visits to ``y`` (``G_hat``) and frequency of ever visiting ``y`` (``F_hat``) within the horizon."""
    if horizon < 10 * (x.length + y.length + 1):
        import warnings
        warnings.warn(f"horizon {horizon} is short relative to d(x, y)", stacklevel=2)
    return estimate_green_many(mu_tilde, x, [y], N, horizon, seed, workers)[0]


def green_decay_profile(mu_tilde: TreeMeasure, distances: Sequence[int], N: int, horizon: int, seed: int,
                        workers: int = 1) -> dict[int, KernelEstimate]:
    """Hitting probabilities from the root to one representative vertex per distance."""
    sig = mu_tilde.sig
    ys = [sig.ray_vertex(d) for d in distances]
    est = estimate_green_many(mu_tilde, ROOT, ys, N, horizon, seed, workers)
    return dict(zip(distances, est))


# --- boundary functions -------------------------------------------------------


@dataclass
class BoundaryFunction:
    """Locally constant function of (end prefix at ``depth``, lamp states on ``window``)."""

    depth: int
    window: tuple[TreeVertex, ...] = ()
    table: dict = field(default_factory=dict)
    default: float = 0.0

    def __post_init__(self):
        self.window = tuple(self.window)
        for (prefix, lamps), _ in self.table.items():
            if prefix.length != self.depth or len(lamps) != len(self.window):
                raise ValueError(f"table key ({format_vertex(prefix)}, {lamps}) does not match depth/window")

    @classmethod
    def constant(cls, value: float) -> "BoundaryFunction":
        return cls(0, (), {}, float(value))

    @classmethod
    def cylinder(cls, prefix: TreeVertex, window: Mapping[TreeVertex, int] | None = None, r: int = 2):
        """Indicator of ``{end through prefix} x {lamps equal to window}``."""
        window = dict(window or {})
        keys = tuple(sorted(window, key=TreeVertex.sort_key))
        return cls(prefix.length, keys, {(prefix, tuple(window[v] for v in keys)): 1.0}, 0.0)

    @property
    def window_radius(self) -> int:
        return max((v.length for v in self.window), default=-1)

    @property
    def track_depth(self) -> int:
        return max(self.depth, self.window_radius, 0)

    def values(self) -> list[float]:
        return list(self.table.values()) + [self.default]

    def __call__(self, prefix: TreeVertex, lamps: Configuration) -> float:
        key = (truncate(prefix, self.depth), tuple(lamps[v] for v in self.window))
        return self.table.get(key, self.default)

    def at(self, beta: BoundaryPoint) -> float:
        return self(beta.end.prefix, beta.zeta)

    def decidable(self, rec: ConvergenceRecord) -> bool:
        return rec.end_depth >= self.depth and rec.lamp_depth >= self.window_radius

    def evaluate(self, rec: ConvergenceRecord) -> float | None:
        if not self.decidable(rec):
            return None
        prefix = rec.end_prefix.prefix if rec.end_prefix is not None else ROOT
        return self(prefix, rec.frozen_config)

    def pullback(self, group: LamplighterGroup, g: GroupElement) -> "BoundaryFunction":
        """``beta -> f(g beta)`` as a table of depth ``depth + |x|`` on the window ``x^-1 A``."""
        sig = group.sig
        xinv = sig.inverse(g.x)
        window = tuple(sig.mul(xinv, a) for a in self.window)
        depth = self.depth + g.x.length if self.depth else 0
        prefixes = sig.sphere(depth) if depth else [ROOT]
        table = {}
        for p in prefixes:
            for states in itertools.product(range(group.r), repeat=len(window)):
                zeta = Configuration(group.r, dict(zip(window, states)))
                if depth:
                    beta = group.act(g, BoundaryPoint(zeta, EndPrefix(p)))
                    table[(p, states)] = self(beta.end.prefix, beta.zeta)
                else:
                    table[(p, states)] = self(ROOT, g.eta + group.translate(g.x, zeta))
        return BoundaryFunction(depth, window, table, self.default)

    # JSON: {depth, window: [word...], entries: [{prefix, lamps, value}], default}
    @classmethod
    def from_dict(cls, d: dict, sig: FreeProductSignature | None = None) -> "BoundaryFunction":
        window = tuple(parse_vertex(w, sig) for w in d.get("window", []))
        table = {}
        for e in d.get("entries", []):
            key = (parse_vertex(e["prefix"], sig), tuple(int(s) for s in e.get("lamps", [])))
            table[key] = float(e["value"])
        return cls(int(d["depth"]), window, table, float(d.get("default", 0.0)))

    def to_dict(self) -> dict:
        entries = sorted(self.table.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1]))
        return {
            "depth": self.depth,
            "window": [format_vertex(v) for v in self.window],
            "entries": [{"prefix": format_vertex(p), "lamps": list(s), "value": v} for (p, s), v in entries],
            "default": self.default,
        }

    @classmethod
    def load(cls, path, sig=None) -> "BoundaryFunction":
        return cls.from_dict(json.loads(Path(path).read_text()), sig)


# --- Dirichlet problem ------------------------------------------------------


@dataclass
class DirichletEstimate:
    h_hat: float
    std_err: float
    indeterminate: int
    N: int
    lower: float = float("nan")
    upper: float = float("nan")


def dirichlet_estimate(mu: MeasureSpec, f: BoundaryFunction, g: GroupElement, N: int, horizon: int, seed: int,
                       stable_fraction: float = STABLE_FRACTION, workers: int = 1,
                       records: Sequence[ConvergenceRecord] | None = None) -> DirichletEstimate:
    """Average of ``f(Z_infinity)`` over walks started at ``g``.

    Trajectories on which ``f`` cannot be read off are excluded from ``h_hat``
    and counted; ``lower``/``upper`` bound the estimate by giving them the
    smallest/largest value ``f`` takes.
    """
    if records is None:
        records = simulate_records(mu, horizon, N, seed, f.track_depth, g, stable_fraction, workers)
    vals = [f.evaluate(rec) for rec in records]
    ok = np.array([v for v in vals if v is not None], float)
    indet = len(vals) - len(ok)
    if len(ok):
        h = float(ok.mean())
        se = float(ok.std() / math.sqrt(len(ok)))
    else:
        h = se = float("nan")
    lo, hi = min(f.values()), max(f.values())
    total = float(ok.sum())
    return DirichletEstimate(h, se, indet, len(vals), (total + lo * indet) / len(vals), (total + hi * indet) / len(vals))


@dataclass
class SequencePoint:
    k: int
    g: GroupElement
    estimate: DirichletEstimate
    target: float


def approach_sequence(beta: BoundaryPoint, ks: Sequence[int]) -> list[tuple[int, GroupElement]]:
    """``g_k``: position at depth ``k`` on the ray to ``beta``, lamps equal to ``zeta`` on ``B(o, k)``."""
    if max(ks) > beta.end.depth:
        raise ValueError(f"end known to depth {beta.end.depth}, sequence needs {max(ks)}")
    out = []
    for k in ks:
        eta = beta.zeta.restrict(lambda v, k=k: v.length <= k)
        out.append((k, GroupElement(eta, truncate(beta.end.prefix, k))))
    return out


def dirichlet_boundary_convergence(mu: MeasureSpec, f: BoundaryFunction, beta: BoundaryPoint, ks: Sequence[int],
                                   N: int, horizon: int, seed: int, workers: int = 1) -> list[SequencePoint]:
    """Estimates of the harmonic extension along a sequence converging to ``beta``."""
    target = f.at(beta)
    out = []
    for k, g in approach_sequence(beta, ks):
        est = dirichlet_estimate(mu, f, g, N, horizon, trajectory_seed(seed, k), workers=workers)
        out.append(SequencePoint(k, g, est, target))
    return out


@dataclass
class ResidualEstimate:
    residual: float
    combined_std_err: float
    h_g: DirichletEstimate
    h_neighbors: list[DirichletEstimate]


def mean_value_residual(mu: MeasureSpec, f: BoundaryFunction, g: GroupElement, N: int, horizon: int, seed: int,
                        workers: int = 1) -> ResidualEstimate:
    """``|h(g) - sum_s mu(s) h(g s)|`` with every ``h`` estimated from its own seed."""
    G = mu.group
    h0 = dirichlet_estimate(mu, f, g, N, horizon, trajectory_seed(seed, 0), workers=workers)
    hs = [dirichlet_estimate(mu, f, G.mul(g, s), N, horizon, trajectory_seed(seed, i + 1), workers=workers)
          for i, (s, _) in enumerate(mu.atoms)]
    ps = [float(p) for _, p in mu.atoms]
    resid = abs(math.fsum(p * (h0.h_hat - h.h_hat) for p, h in zip(ps, hs))) / math.fsum(ps)
    var = h0.std_err ** 2 + math.fsum(p * p * h.std_err ** 2 for p, h in zip(ps, hs))
    return ResidualEstimate(resid, math.sqrt(var), h0, hs)
