"""Probability laws on the lamplighter group and trajectory simulation."""
from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from pathlib import Path

import numpy as np

from .engine import CompiledMeasure, LampWalker
from .rng import make_rng
from .tree import ROOT, FreeProductSignature, TreeVertex, format_vertex, parse_vertex, tree_distance
from .wreath import (
    Configuration,
    GroupElement,
    LamplighterGroup,
    config_from_pairs,
    config_to_pairs,
)

PROB_TOL = 1e-12


@dataclass(frozen=True)
class MeasureSpec:
    """Finitely supported probability measure on ``Z_r wr Gamma``."""

    group: LamplighterGroup
    atoms: tuple[tuple[GroupElement, Real], ...]
    label: str = ""

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("a measure needs at least one atom")
        seen = set()
        for g, p in self.atoms:
            if not p > 0:
                raise ValueError(f"atom {g} has non-positive mass {p}")
            if g.eta.r != self.group.r:
                raise ValueError(f"atom {g} has r={g.eta.r}, group has r={self.group.r}")
            self.group.sig.check(g.x)
            if g in seen:
                raise ValueError(f"atom {g} listed twice")
            seen.add(g)
        total = sum(p for _, p in self.atoms)
        if abs(float(total) - 1.0) > PROB_TOL:
            raise ValueError(f"masses sum to {total}, not 1")

    @property
    def support(self) -> list[GroupElement]:
        return [g for g, _ in self.atoms]

    def mass(self, g: GroupElement):
        for h, p in self.atoms:
            if h == g:
                return p
        return 0

    @property
    def compiled(self) -> CompiledMeasure:
        cm = self.__dict__.get("_compiled")
        if cm is None:
            cm = CompiledMeasure(self)
            object.__setattr__(self, "_compiled", cm)
        return cm

    def __getstate__(self):
        d = dict(self.__dict__)
        d.pop("_compiled", None)
        return d

    def __setstate__(self, d):
        self.__dict__.update(d)


@dataclass(frozen=True)
class TreeMeasure:
    """Law of the projected walk on the base group."""

    sig: FreeProductSignature
    atoms: tuple[tuple[TreeVertex, Real], ...]

    def __post_init__(self):
        total = sum(p for _, p in self.atoms)
        if abs(float(total) - 1.0) > PROB_TOL:
            raise ValueError(f"masses sum to {total}, not 1")

    def mass(self, x: TreeVertex):
        return dict(self.atoms).get(x, 0)


def basic_walk(sig: FreeProductSignature, r: int, theta) -> MeasureSpec:
    """Move to a uniform neighbour w.p. theta, otherwise re-randomise the lamp underfoot."""
    if not 0 < theta < 1:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    G = LamplighterGroup(sig, r)
    move = theta / (sig.q + 1)
    switch = (1 - theta) / (r - 1)
    atoms = [(GroupElement(G.zero, TreeVertex((s,))), move) for s in sig.generators]
    atoms += [(GroupElement(Configuration.delta(r, ROOT, k), ROOT), switch) for k in range(1, r)]
    return MeasureSpec(G, tuple(atoms), label=f"basic(q={sig.q},r={r},theta={theta})")


def point_mass(group: LamplighterGroup, g: GroupElement, label: str = "point") -> MeasureSpec:
    return MeasureSpec(group, ((g, 1),), label=label)


def lazy_tree_walk(sig: FreeProductSignature, theta=1) -> TreeMeasure:
    """Nearest-neighbour walk on the tree holding w.p. 1 - theta; theta = 1 is simple random walk."""
    if not 0 < theta <= 1:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")
    atoms = [(TreeVertex((s,)), theta / (sig.q + 1)) for s in sig.generators]
    if theta != 1:
        atoms.insert(0, (ROOT, 1 - theta))
    return TreeMeasure(sig, tuple(atoms))


def project_measure(mu: MeasureSpec) -> TreeMeasure:
    acc = defaultdict(int)
    for g, p in mu.atoms:
        acc[g.x] += p
    atoms = tuple(sorted(acc.items(), key=lambda kv: kv[0].sort_key()))
    return TreeMeasure(mu.group.sig, atoms)


def bounded_range(mu: MeasureSpec) -> int:
    """Largest distance from a lit lamp of an atom to the nearer endpoint of its move."""
    R = 0
    for g, _ in mu.atoms:
        for y in g.eta:
            R = max(R, min(y.length, tree_distance(y, g.x)))
    return R


def first_moment(mu: MeasureSpec) -> float:
    G = mu.group
    return float(sum(p * G.norm(g) for g, p in mu.atoms))


@dataclass
class Trajectory:
    mu: MeasureSpec
    start: GroupElement
    seed: int
    increments: np.ndarray
    times: list[int] = field(default_factory=list)
    steps: list[GroupElement] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.increments)

    @property
    def final(self) -> GroupElement:
        return self.steps[-1]

    def increment(self, k: int) -> GroupElement:
        """The k-th increment (k >= 1)."""
        return self.mu.atoms[int(self.increments[k - 1])][0]


def sample_increments(mu: MeasureSpec, n: int, seed: int) -> np.ndarray:
    return mu.compiled.table.sample(make_rng(seed), n)


def run_trajectory(mu: MeasureSpec, g0: GroupElement, n: int, seed: int, stride: int = 1) -> Trajectory:
    """Simulate ``Z_k = g0 * g_1 * ... * g_k``, keeping ``Z_k`` every ``stride`` steps and at ``k = n``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    inc = sample_increments(mu, n, seed)
    walker = LampWalker(mu.compiled, g0)
    traj = Trajectory(mu, g0, seed, inc, [0], [g0])
    idx = inc.tolist()
    for t0 in range(0, n, stride):
        chunk = idx[t0:t0 + stride]
        walker.advance(chunk)
        traj.times.append(t0 + len(chunk))
        traj.steps.append(walker.element())
    return traj


def increment_lamp_radius(trajectory: Trajectory) -> list[int]:
    """``M_k``: farthest lamp (from the root) switched by the k-th increment itself."""
    radius = trajectory.mu.compiled.lamp_radius
    return [radius[j] for j in trajectory.increments.tolist()]


@dataclass
class GenerationReport:
    generates_ball: bool
    unreached: list[GroupElement]
    ball_size: int


def check_semigroup_generation(mu: MeasureSpec, radius: int, cap: int = 6) -> GenerationReport:
    """Which elements of ``B(id, radius)`` are products of support elements without leaving the ball.

    Reaching every element is evidence, not proof, that the support generates
    the group as a semigroup.
    """
    if radius > cap:
        raise ValueError(f"radius {radius} exceeds cap {cap}")
    G = mu.group
    ball = G.cayley_ball(radius)
    reached = {G.identity}
    frontier = deque(reached)
    supp = mu.support
    while frontier:
        g = frontier.popleft()
        for s in supp:
            h = G.mul(g, s)
            if h in ball and h not in reached:
                reached.add(h)
                frontier.append(h)
    missing = [g for g in ball if g not in reached]
    missing.sort(key=lambda g: (ball[g], g.x.sort_key(), [(v.sort_key(), s) for v, s in g.eta.sorted_items()]))
    return GenerationReport(not missing, missing, len(ball))


# --- measure files ---------------------------------------------------------

def _prob(p):
    if isinstance(p, str):
        return Fraction(p)
    return p


def measure_from_dict(d: dict, sig: FreeProductSignature | None = None, r: int | None = None) -> MeasureSpec:
    """Build a measure from its JSON form (explicit atoms or ``preset: basic``)."""
    if "signature" in d:
        sig = FreeProductSignature(int(d["signature"]["a"]), int(d["signature"]["b"]))
    r = int(d.get("r", r if r is not None else 0))
    if d.get("preset") is not None:
        if d["preset"] != "basic":
            raise ValueError(f"unknown preset {d['preset']!r}")
        if sig is None:
            q = int(d["q"])
            sig = FreeProductSignature(q + 1, 0)
        elif "q" in d and int(d["q"]) != sig.q:
            raise ValueError(f"preset q={d['q']} disagrees with signature q={sig.q}")
        return basic_walk(sig, r, _prob(d["theta"]))
    if sig is None:
        raise ValueError("measure needs a signature")
    G = LamplighterGroup(sig, r)
    atoms = []
    for a in d["atoms"]:
        eta = config_from_pairs(a.get("config", []), r, sig)
        atoms.append((GroupElement(eta, parse_vertex(a.get("x", "o"), sig)), _prob(a["p"])))
    return MeasureSpec(G, tuple(atoms), label=d.get("label", ""))


def measure_to_dict(mu: MeasureSpec) -> dict:
    sig = mu.group.sig

    def enc(p):
        return f"{p.numerator}/{p.denominator}" if isinstance(p, Fraction) else p

    return {
        "signature": {"a": sig.a, "b": sig.b},
        "r": mu.group.r,
        "atoms": [{"config": config_to_pairs(g.eta), "x": format_vertex(g.x), "p": enc(p)} for g, p in mu.atoms],
        "label": mu.label,
    }


def load_measure(path, sig=None, r=None) -> MeasureSpec:
    return measure_from_dict(json.loads(Path(path).read_text()), sig, r)
