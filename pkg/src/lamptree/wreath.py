"""Lamp configurations and the lamplighter group Z_r wr Gamma.

Elements are pairs ``(eta, x)`` multiplied by
``(eta, x)(eta', x') = (eta + T_x eta', x x')`` where ``T_x eta(y) = eta(x^-1 y)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .tree import (
    EndPrefix,
    FreeProductSignature,
    ROOT,
    TreeVertex,
    UnresolvedAtDepth,
    format_vertex,
    parse_vertex,
    steiner_tour_length,
    truncate,
)


class Configuration:
    """Finitely supported map ``vertex -> Z_r``; zero lamps are never stored."""

    __slots__ = ("r", "_lamps", "_hash")

    def __init__(self, r: int, lamps: Mapping[TreeVertex, int] | Iterable[tuple[TreeVertex, int]] = ()):
        if r < 2:
            raise ValueError("r must be >= 2")
        items = lamps.items() if isinstance(lamps, Mapping) else lamps
        d = {}
        for v, s in items:
            s %= r
            if s:
                d[v] = s
        self.r = r
        self._lamps = d
        self._hash = None

    @classmethod
    def _raw(cls, r, d):
        c = cls.__new__(cls)
        c.r, c._lamps, c._hash = r, d, None
        return c

    @classmethod
    def delta(cls, r: int, v: TreeVertex = ROOT, state: int = 1) -> "Configuration":
        return cls(r, {v: state})

    def __getitem__(self, v: TreeVertex) -> int:
        return self._lamps.get(v, 0)

    def __len__(self) -> int:
        return len(self._lamps)

    def __bool__(self) -> bool:
        return bool(self._lamps)

    def __iter__(self) -> Iterator[TreeVertex]:
        return iter(self._lamps)

    def items(self):
        return self._lamps.items()

    @property
    def support(self) -> frozenset:
        return frozenset(self._lamps)

    def sorted_items(self) -> list[tuple[TreeVertex, int]]:
        return sorted(self._lamps.items(), key=lambda kv: kv[0].sort_key())

    def _check(self, other: "Configuration"):
        if not isinstance(other, Configuration):
            raise TypeError(f"cannot combine a configuration with {type(other).__name__}")
        if other.r != self.r:
            raise ValueError(f"lamp state counts differ: {self.r} vs {other.r}")

    def __add__(self, other: "Configuration") -> "Configuration":
        self._check(other)
        r = self.r
        d = dict(self._lamps)
        for v, s in other._lamps.items():
            t = (d.get(v, 0) + s) % r
            if t:
                d[v] = t
            else:
                d.pop(v, None)
        return Configuration._raw(r, d)

    def __neg__(self) -> "Configuration":
        r = self.r
        return Configuration._raw(r, {v: r - s for v, s in self._lamps.items()})

    def __sub__(self, other: "Configuration") -> "Configuration":
        return self + (-other)

    def restrict(self, keep) -> "Configuration":
        return Configuration._raw(self.r, {v: s for v, s in self._lamps.items() if keep(v)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.r == other.r and self._lamps == other._lamps

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.r, frozenset(self._lamps.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Configuration(r={self.r}, {format_config(self)!r})"


def config_add(a: Configuration, b: Configuration) -> Configuration:
    return a + b


@dataclass(frozen=True)
class GroupElement:
    eta: Configuration
    x: TreeVertex

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True)
class BoundaryPoint:
    """Finite-support configuration together with an end known to finite depth."""

    zeta: Configuration
    end: EndPrefix

    def __str__(self) -> str:
        return format_boundary(self)


@dataclass(frozen=True)
class LamplighterGroup:
    sig: FreeProductSignature
    r: int

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("r must be >= 2")

    @property
    def q(self) -> int:
        return self.sig.q

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self.zero, ROOT)

    @property
    def zero(self) -> Configuration:
        return Configuration(self.r)

    def element(self, lamps=(), x: TreeVertex = ROOT) -> GroupElement:
        return GroupElement(Configuration(self.r, lamps), x)

    def translate(self, x: TreeVertex, eta: Configuration) -> Configuration:
        if not x.syllables:
            return eta
        mul = self.sig.mul
        return Configuration._raw(eta.r, {mul(x, v): s for v, s in eta.items()})

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self._same(g, h)
        return GroupElement(g.eta + self.translate(g.x, h.eta), self.sig.mul(g.x, h.x))

    def inv(self, g: GroupElement) -> GroupElement:
        xi = self.sig.inverse(g.x)
        return GroupElement(-self.translate(xi, g.eta), xi)

    def _same(self, *elems: GroupElement):
        for e in elems:
            if e.eta.r != self.r:
                raise ValueError(f"element has r={e.eta.r}, group has r={self.r}")

    def distance(self, g: GroupElement, h: GroupElement) -> int:
        """Word metric: shortest tour through the lamps that differ, plus one switch each."""
        self._same(g, h)
        diff = (h.eta - g.eta).support
        return steiner_tour_length(g.x, h.x, diff) + len(diff)

    def norm(self, g: GroupElement) -> int:
        return self.distance(self.identity, g)

    def act(self, g: GroupElement, beta: BoundaryPoint) -> BoundaryPoint:
        """Left action on boundary points; the end moves by left multiplication."""
        p = beta.end.prefix
        w = self.sig.mul(g.x, p)
        cancelled = (g.x.length + p.length - w.length) // 2
        if cancelled >= p.length:
            raise UnresolvedAtDepth(
                f"translating {beta.end} by {format_vertex(g.x)} leaves no resolved depth"
            )
        return BoundaryPoint(g.eta + self.translate(g.x, beta.zeta), EndPrefix(w))

    def generators(self) -> list[GroupElement]:
        """Standard generators: the q+1 moves and the r-1 switches at the root."""
        gens = [GroupElement(self.zero, TreeVertex((s,))) for s in self.sig.generators]
        gens += [GroupElement(Configuration.delta(self.r, ROOT, k), ROOT) for k in range(1, self.r)]
        return gens

    def neighbors(self, g: GroupElement) -> list[GroupElement]:
        """Adjacent vertices in the lamplighter graph, straight from the neighbourhood relation."""
        out = [GroupElement(g.eta, y) for y in self.sig.neighbors(g.x)]
        for k in range(1, self.r):
            out.append(GroupElement(g.eta + Configuration.delta(self.r, g.x, k), g.x))
        return out

    def cayley_ball(self, radius: int, center: GroupElement | None = None) -> dict[GroupElement, int]:
        """Breadth-first search in the lamplighter graph; returns element -> graph distance."""
        start = self.identity if center is None else center
        dist = {start: 0}
        frontier = deque([start])
        while frontier:
            g = frontier.popleft()
            d = dist[g]
            if d == radius:
                continue
            for h in self.neighbors(g):
                if h not in dist:
                    dist[h] = d + 1
                    frontier.append(h)
        return dist

    def boundary_point(self, lamps, prefix: TreeVertex) -> BoundaryPoint:
        return BoundaryPoint(Configuration(self.r, lamps), EndPrefix(prefix))

    def end_truncate(self, beta: BoundaryPoint, depth: int) -> BoundaryPoint:
        return BoundaryPoint(beta.zeta, EndPrefix(truncate(beta.end.prefix, depth)))


# --- canonical text -------------------------------------------------------

def format_config(eta: Configuration) -> str:
    if not eta:
        return "0"
    return ";".join(f"{format_vertex(v)}:{s}" for v, s in eta.sorted_items())


def parse_config(text: str, r: int, sig: FreeProductSignature | None = None) -> Configuration:
    text = text.strip()
    if text in ("0", ""):
        return Configuration(r)
    lamps = {}
    for part in text.split(";"):
        word, _, state = part.rpartition(":")
        if not word:
            raise ValueError(f"malformed lamp {part!r}")
        v = parse_vertex(word, sig)
        if v in lamps:
            raise ValueError(f"lamp {word!r} listed twice")
        lamps[v] = int(state)
    return Configuration(r, lamps)


def format_element(g: GroupElement) -> str:
    return f"{format_config(g.eta)}@{format_vertex(g.x)}"


def parse_element(text: str, r: int, sig: FreeProductSignature | None = None) -> GroupElement:
    conf, sep, word = text.strip().rpartition("@")
    if not sep:
        raise ValueError(f"group element needs 'config@word', got {text!r}")
    return GroupElement(parse_config(conf, r, sig), parse_vertex(word, sig))


def format_boundary(beta: BoundaryPoint) -> str:
    return f"{format_config(beta.zeta)}@{beta.end}"


def parse_boundary(text: str, r: int, sig: FreeProductSignature | None = None) -> BoundaryPoint:
    text = text.strip()
    if not text.endswith("..."):
        raise ValueError(f"boundary point must end with '...', got {text!r}")
    g = parse_element(text[:-3], r, sig)
    return BoundaryPoint(g.eta, EndPrefix(g.x))


def config_from_pairs(pairs, r: int, sig: FreeProductSignature | None = None) -> Configuration:
    """``[[word, state], ...]`` as used in the JSON files."""
    lamps = {}
    for word, state in pairs:
        v = parse_vertex(word, sig)
        lamps[v] = (lamps.get(v, 0) + int(state)) % r
    return Configuration(r, lamps)


def config_to_pairs(eta: Configuration) -> list:
    return [[format_vertex(v), s] for v, s in eta.sorted_items()]
