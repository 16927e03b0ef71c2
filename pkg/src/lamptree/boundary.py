"""Convergence to the boundary, harmonic measure, escape rates and strips.

A trajectory is read as converged at depth ``k`` when the depth-``k`` prefix of
``X_n`` (resp. every lamp in the ball ``B(o, k)``) did not change during the
final ``stable_fraction`` of the horizon. Trajectories that do not resolve an
event are counted separately as indeterminate mass, never dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial
from typing import Mapping, Sequence

import numpy as np

from .engine import LampWalker
from .rng import make_rng, pmap, trajectory_seed
from .tree import (
    EndPrefix,
    TreeVertex,
    UnresolvedAtDepth,
    common_prefix_length,
    format_vertex,
    subtree_member,
    truncate,
)
from .walk import MeasureSpec, Trajectory, sample_increments
from .wreath import BoundaryPoint, Configuration, GroupElement, LamplighterGroup

STABLE_FRACTION = 0.25


class NotStabilized(Exception):
    """Even the depth-1 prefix moved during the final window."""


class YNotOnGeodesic(ValueError):
    pass


@dataclass
class ConvergenceRecord:
    end_prefix: EndPrefix | None
    frozen_config: Configuration
    lamp_depth: int
    prefix_times: dict[int, int | None]
    lamp_times: dict[int, int]
    horizon: int
    stable_fraction: float = STABLE_FRACTION
    final_depth: int = 0

    @property
    def end_depth(self) -> int:
        return 0 if self.end_prefix is None else self.end_prefix.depth

    @property
    def stabilized(self) -> bool:
        return self.end_prefix is not None

    @property
    def cutoff(self) -> int:
        return self.horizon - int(np.ceil(self.stable_fraction * self.horizon))

    @property
    def stabilization_times(self) -> dict[int, int | None]:
        """Depth -> last time the prefix or a lamp of the ball changed (None if the prefix is undefined)."""
        out = {}
        for k, t in self.prefix_times.items():
            out[k] = None if t is None else max(t, self.lamp_times.get(k, 0))
        return out

    def prefix_stable(self, k: int) -> bool:
        t = self.prefix_times.get(k)
        return t is not None and t <= self.cutoff

    def lamps_stable(self, k: int) -> bool:
        return self.lamp_times.get(k, self.horizon + 1) <= self.cutoff


def _record(walker: LampWalker, fraction: float) -> ConvergenceRecord:
    prefix_times, lamp_times, end_depth, lamp_depth = walker.stability(fraction)
    end = None
    if end_depth:
        end = EndPrefix(walker.vertex(walker.ancestor(walker.x, end_depth)))
    frozen = walker.config_within(lamp_depth) if lamp_depth >= 0 else Configuration(walker.cm.r)
    return ConvergenceRecord(
        end, frozen, lamp_depth, prefix_times, lamp_times, walker.t, fraction, walker.depth[walker.x]
    )


def detect_convergence(trajectory: Trajectory, depths: Sequence[int], stable_fraction: float = STABLE_FRACTION,
                       strict: bool = False) -> ConvergenceRecord:
    """Replay ``trajectory`` and report which prefixes and lamp balls froze.

    ``end_prefix`` is the deepest requested depth that was stable; the
    reported time maps are restricted to ``depths``.
    """
    K = max(depths)
    walker = LampWalker(trajectory.mu.compiled, trajectory.start, track_depth=K)
    walker.advance(trajectory.increments.tolist())
    rec = _record(walker, stable_fraction)
    wanted = set(depths)
    rec.prefix_times = {k: t for k, t in rec.prefix_times.items() if k in wanted}
    rec.lamp_times = {k: t for k, t in rec.lamp_times.items() if k in wanted or k == 0}
    deepest = max((k for k in wanted if rec.prefix_stable(k)), default=0)
    if deepest < rec.end_depth:
        rec.end_prefix = rec.end_prefix.truncate(deepest) if deepest else None
    if strict and not rec.stabilized:
        raise NotStabilized(f"depth-1 prefix changed after time {rec.cutoff} of {rec.horizon}")
    return rec


def _simulate_one(index, mu, g0, horizon, master_seed, depth, fraction):
    seed = trajectory_seed(master_seed, index)
    walker = LampWalker(mu.compiled, g0, track_depth=depth)
    walker.advance(sample_increments(mu, horizon, seed).tolist())
    return _record(walker, fraction)


def simulate_records(mu: MeasureSpec, horizon: int, N: int, seed: int, depth: int,
                     g0: GroupElement | None = None, stable_fraction: float = STABLE_FRACTION,
                     workers: int = 1) -> list[ConvergenceRecord]:
    """Convergence records of ``N`` independent trajectories, in index order."""
    g0 = mu.group.identity if g0 is None else g0
    fn = partial(_simulate_one, mu=mu, g0=g0, horizon=horizon, master_seed=seed,
                 depth=depth, fraction=stable_fraction)
    return pmap(fn, range(N), workers)


# --- harmonic measure -------------------------------------------------------

@dataclass(frozen=True)
class CylinderEvent:
    """``{(zeta, u): u passes through end_prefix and zeta matches lamp_window}``."""

    end_prefix: EndPrefix | None
    lamp_window: tuple[tuple[TreeVertex, int], ...] = ()

    @classmethod
    def make(cls, prefix: TreeVertex | None, window: Mapping[TreeVertex, int] | None = None):
        end = EndPrefix(prefix) if prefix is not None and prefix.length else None
        items = tuple(sorted((window or {}).items(), key=lambda kv: kv[0].sort_key()))
        return cls(end, items)

    @property
    def window_radius(self) -> int:
        return max((v.length for v, _ in self.lamp_window), default=-1)

    def decidable(self, rec: ConvergenceRecord) -> bool:
        need = 0 if self.end_prefix is None else self.end_prefix.depth
        return rec.end_depth >= need and rec.lamp_depth >= self.window_radius

    def occurs(self, rec: ConvergenceRecord) -> bool:
        if self.end_prefix is not None:
            p = self.end_prefix.prefix
            if common_prefix_length(p, rec.end_prefix.prefix) < p.length:
                return False
        return all(rec.frozen_config[v] == s for v, s in self.lamp_window)

    def __str__(self) -> str:
        end = "*" if self.end_prefix is None else str(self.end_prefix)
        win = ";".join(f"{format_vertex(v)}:{s}" for v, s in self.lamp_window)
        return f"{end}|{win}" if win else end


def cylinder_events(group: LamplighterGroup, depth: int) -> list[CylinderEvent]:
    """Partition of the boundary by the depth-``depth`` prefix of the end."""
    return [CylinderEvent.make(v) for v in group.sig.sphere(depth)]


@dataclass
class HarmonicEstimate:
    events: list[CylinderEvent]
    counts: list[int]
    indeterminate: list[int]
    N: int

    @property
    def p_hat(self) -> np.ndarray:
        return np.asarray(self.counts, float) / self.N

    @property
    def std_err(self) -> np.ndarray:
        p = self.p_hat
        return np.sqrt(p * (1 - p) / self.N)

    @property
    def indeterminate_mass(self) -> np.ndarray:
        return np.asarray(self.indeterminate, float) / self.N


def tally_events(records: Sequence[ConvergenceRecord], events: Sequence[CylinderEvent]) -> HarmonicEstimate:
    counts = [0] * len(events)
    indet = [0] * len(events)
    for rec in records:
        for i, ev in enumerate(events):
            if not ev.decidable(rec):
                indet[i] += 1
            elif ev.occurs(rec):
                counts[i] += 1
    return HarmonicEstimate(list(events), counts, indet, len(records))


def estimate_harmonic_measure(mu: MeasureSpec, events: Sequence[CylinderEvent], N: int, horizon: int, seed: int,
                              g0: GroupElement | None = None, stable_fraction: float = STABLE_FRACTION,
                              workers: int = 1) -> HarmonicEstimate:
    """Frequencies of ``Z_infinity`` landing in each event, with binomial standard errors."""
    depth = max([1] + [0 if e.end_prefix is None else e.end_prefix.depth for e in events]
                + [e.window_radius for e in events])
    recs = simulate_records(mu, horizon, N, seed, depth, g0, stable_fraction, workers)
    return tally_events(recs, events)


# --- rates of escape ------------------------------------------------------

@dataclass
class EscapeEstimate:
    ell_hat: float
    m_hat: float
    ell_se: float
    m_se: float
    n: int
    N: int


def _escape_one(index, mu, n, master_seed):
    walker = LampWalker(mu.compiled)
    walker.advance(sample_increments(mu, n, trajectory_seed(master_seed, index)).tolist())
    return walker.norm(), walker.tree_displacement()


def escape_rates(mu: MeasureSpec, n: int, N: int, seed: int, workers: int = 1) -> EscapeEstimate:
    """Sample means of ``d(Z_n, Z_0)/n`` and ``d(X_n, X_0)/n`` over ``N`` walks from the identity."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = np.array(pmap(partial(_escape_one, mu=mu, n=n, master_seed=seed), range(N), workers), float) / n
    se = out.std(axis=0, ddof=1) / np.sqrt(N) if N > 1 else np.zeros(2)
    return EscapeEstimate(float(out[:, 0].mean()), float(out[:, 1].mean()), float(se[0]), float(se[1]), n, N)


# --- strips -----------------------------------------------------------------

@dataclass(frozen=True)
class StripQuery:
    beta: BoundaryPoint
    beta_check: BoundaryPoint
    resolution: int


def _ends_split(u: EndPrefix, v: EndPrefix) -> int:
    c = common_prefix_length(u.prefix, v.prefix)
    if c >= min(u.depth, v.depth):
        raise UnresolvedAtDepth(f"ends {u} and {v} are not separated at their resolution")
    return c


def on_geodesic(u: EndPrefix, v: EndPrefix, y: TreeVertex) -> bool:
    """Whether ``y`` lies on the bi-infinite geodesic between the ends ``u`` and ``v``."""
    c = _ends_split(u, v)
    if y.length < c:
        return False
    for end in (u, v):
        if y.length > end.depth and common_prefix_length(y, end.prefix) == end.depth:
            raise UnresolvedAtDepth(f"{format_vertex(y)} lies beyond the resolution of {end}")
        if common_prefix_length(y, end.prefix) == y.length:
            return True
    return False


def geodesic_in_ball(u: EndPrefix, v: EndPrefix, n: int) -> list[TreeVertex]:
    """Vertices of the geodesic between ``u`` and ``v`` within distance ``n`` of the root, u-side first."""
    c = _ends_split(u, v)
    if n < c:
        return []
    if min(u.depth, v.depth) <= n:
        raise UnresolvedAtDepth(f"need both ends resolved beyond depth {n}")
    u_side = [truncate(u.prefix, k) for k in range(n, c, -1)]
    v_side = [truncate(v.prefix, k) for k in range(c, n + 1)]
    return u_side + v_side


def _strip_config(beta: BoundaryPoint, beta_check: BoundaryPoint, y: TreeVertex) -> Configuration:
    v = beta_check.end
    lamps = {w: s for w, s in beta.zeta.items() if w != y and subtree_member(y, v, w)}
    for w, s in beta_check.zeta.items():
        if w == y or not subtree_member(y, v, w):
            lamps[w] = s
    return Configuration(beta.zeta.r, lamps)


def build_strip_point(beta: BoundaryPoint, beta_check: BoundaryPoint, y: TreeVertex) -> GroupElement:
    """``(eta_y, y)``: ``eta_y`` copies ``zeta`` on the side of ``y`` facing the end of ``beta_check`` and ``zeta_check`` elsewhere."""
    if not on_geodesic(beta.end, beta_check.end, y):
        raise YNotOnGeodesic(f"{format_vertex(y)} is not on the geodesic between {beta.end} and {beta_check.end}")
    if y.length >= beta_check.end.depth:
        raise UnresolvedAtDepth(f"cannot orient {format_vertex(y)} towards {beta_check.end}")
    return GroupElement(_strip_config(beta, beta_check, y), y)


def strip_points_in_ball(query: StripQuery) -> list[GroupElement]:
    """Strip elements whose base point is within ``query.resolution`` of the root.

    This contains ``S(beta, beta_check) & B(id, n)`` and has at most ``2n + 1`` elements.
    """
    ys = geodesic_in_ball(query.beta.end, query.beta_check.end, query.resolution)
    return [GroupElement(_strip_config(query.beta, query.beta_check, y), y) for y in ys]


def verify_strip_equivariance(group: LamplighterGroup, g: GroupElement, beta: BoundaryPoint,
                              beta_check: BoundaryPoint, n: int) -> bool:
    """Check ``g S(beta, beta_check) = S(g beta, g beta_check)`` on the part of the strip over ``B(o, n)``."""
    here = strip_points_in_ball(StripQuery(beta, beta_check, n))
    moved = {group.mul(g, s) for s in here}
    gb, gbc = group.act(g, beta), group.act(g, beta_check)
    there = strip_points_in_ball(StripQuery(gb, gbc, n + g.x.length))
    xinv = group.sig.inverse(g.x)
    back = {s for s in there if group.sig.mul(xinv, s.x).length <= n}
    return moved == back
