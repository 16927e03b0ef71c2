"""Free products of Z2 and Z factors, viewed as the homogeneous tree T_q.

A vertex is a reduced word: a tuple of syllables ``(factor, exponent)``.
Factors ``0..a-1`` are copies of Z2 (exponent always 1), factors
``a..a+b-1`` are copies of Z. The Cayley graph with respect to the standard
generators (each Z2 letter, each Z letter and its inverse) is the tree with
degree ``q + 1 = a + 2b``.

Ends of the tree are only ever known to finite precision, as an
:class:`EndPrefix`: the cylinder of ends whose ray from the root passes
through a given vertex.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

Syllable = tuple[int, int]
Letter = tuple[int, int]  # (factor, +1 or -1)


class UnresolvedAtDepth(Exception):
    """An end prefix is too short to decide the requested quantity."""


@dataclass(frozen=True)
class TreeVertex:
    syllables: tuple[Syllable, ...] = ()

    def __len__(self) -> int:
        return self.length

    @cached_property
    def length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    @cached_property
    def letters(self) -> tuple[Letter, ...]:
        out = []
        for f, e in self.syllables:
            out.extend([(f, 1 if e > 0 else -1)] * abs(e))
        return tuple(out)

    def sort_key(self):
        return (self.length, self.syllables)

    def __str__(self) -> str:
        return format_vertex(self)

    def __repr__(self) -> str:
        return f"TreeVertex({format_vertex(self)!r})"


ROOT = TreeVertex()


@dataclass(frozen=True)
class EndPrefix:
    """Cylinder of ends whose ray from the root passes through ``prefix``."""

    prefix: TreeVertex

    def __post_init__(self):
        if self.prefix.length < 1:
            raise ValueError("an end prefix needs depth >= 1")

    @property
    def depth(self) -> int:
        return self.prefix.length

    def truncate(self, depth: int) -> "EndPrefix":
        if depth > self.depth:
            raise UnresolvedAtDepth(f"prefix known to depth {self.depth}, asked for {depth}")
        return EndPrefix(truncate(self.prefix, depth))

    def __str__(self) -> str:
        return format_vertex(self.prefix) + "..."


def from_letters(letters: Iterable[Letter]) -> TreeVertex:
    """Group runs of equal letters into syllables (input assumed reduced)."""
    syl: list[list[int]] = []
    for f, s in letters:
        if syl and syl[-1][0] == f:
            syl[-1][1] += s
        else:
            syl.append([f, s])
    return TreeVertex(tuple((f, e) for f, e in syl))


@dataclass(frozen=True)
class FreeProductSignature:
    """Base group: free product of ``a`` copies of Z2 and ``b`` copies of Z."""

    a: int
    b: int
    q: int = field(init=False)

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("factor counts must be non-negative")
        if self.a + 2 * self.b < 3:
            raise ValueError(f"a + 2b must be >= 3, got a={self.a}, b={self.b}")
        object.__setattr__(self, "q", self.a + 2 * self.b - 1)

    @property
    def nfactors(self) -> int:
        return self.a + self.b

    def is_involution(self, factor: int) -> bool:
        return factor < self.a

    @cached_property
    def generators(self) -> tuple[Letter, ...]:
        """The q+1 letters labelling edges at every vertex."""
        gens: list[Letter] = [(i, 1) for i in range(self.a)]
        for j in range(self.a, self.a + self.b):
            gens += [(j, 1), (j, -1)]
        return tuple(gens)

    def letter_inverse(self, letter: Letter) -> Letter:
        f, s = letter
        return letter if self.is_involution(f) else (f, -s)

    def reduce(self, raw: Iterable[Syllable]) -> TreeVertex:
        return TreeVertex(tuple(self._reduce_onto([], raw)))

    def _reduce_onto(self, stack: list, raw: Iterable[Syllable]) -> list:
        a, n = self.a, self.nfactors
        for f, e in raw:
            if not 0 <= f < n:
                raise ValueError(f"factor index {f} out of range for signature ({self.a},{self.b})")
            if f < a:
                e %= 2
            if e == 0:
                continue
            if stack and stack[-1][0] == f:
                e += stack[-1][1]
                if f < a:
                    e %= 2
                stack.pop()
                if e:
                    stack.append((f, e))
            else:
                stack.append((f, e))
        return stack

    def mul(self, x: TreeVertex, y: TreeVertex) -> TreeVertex:
        if not y.syllables:
            return x
        return TreeVertex(tuple(self._reduce_onto(list(x.syllables), y.syllables)))

    def inverse(self, x: TreeVertex) -> TreeVertex:
        a = self.a
        return TreeVertex(tuple((f, e if f < a else -e) for f, e in reversed(x.syllables)))

    def distance(self, x: TreeVertex, y: TreeVertex) -> int:
        return tree_distance(x, y)

    def vertex(self, *syllables: Syllable) -> TreeVertex:
        return self.reduce(syllables)

    def check(self, x: TreeVertex) -> TreeVertex:
        """Raise unless ``x`` is a reduced word for this signature."""
        if self.reduce(x.syllables) != x:
            raise ValueError(f"{x!r} is not a reduced word for ({self.a},{self.b})")
        return x

    def neighbors(self, x: TreeVertex) -> list[TreeVertex]:
        return [self.mul(x, TreeVertex((g,))) for g in self.generators]

    def step(self, x: TreeVertex, letter: Letter) -> TreeVertex:
        return self.mul(x, TreeVertex((letter,)))

    def sphere(self, k: int) -> list[TreeVertex]:
        """All vertices at distance exactly ``k`` from the root, in sorted order."""
        words: list[tuple[Letter, ...]] = [()]
        for _ in range(k):
            nxt = []
            for w in words:
                for g in self.generators:
                    if w and self.letter_inverse(g) == w[-1]:
                        continue
                    nxt.append(w + (g,))
            words = nxt
        return sorted((from_letters(w) for w in words), key=TreeVertex.sort_key)

    def ball(self, radius: int) -> list[TreeVertex]:
        return [v for k in range(radius + 1) for v in self.sphere(k)]

    def ray_vertex(self, depth: int, first: int = 0) -> TreeVertex:
        """A fixed representative at ``depth``: greedy reduced word starting at generator ``first``."""
        gens = self.generators
        letters: list[Letter] = []
        for i in range(depth):
            if i == 0:
                letters.append(gens[first])
                continue
            prev_inv = self.letter_inverse(letters[-1])
            for g in gens:
                if g != prev_inv:
                    letters.append(g)
                    break
        return from_letters(letters)


def truncate(x: TreeVertex, k: int) -> TreeVertex:
    """Prefix of the reduced word of ``x`` of length ``k``."""
    if k >= x.length:
        return x
    out = []
    left = k
    for f, e in x.syllables:
        if left == 0:
            break
        if abs(e) <= left:
            out.append((f, e))
            left -= abs(e)
        else:
            out.append((f, left if e > 0 else -left))
            left = 0
    return TreeVertex(tuple(out))


def common_prefix_length(x: TreeVertex, y: TreeVertex) -> int:
    n = 0
    for (f1, e1), (f2, e2) in zip(x.syllables, y.syllables):
        if (f1, e1) == (f2, e2):
            n += abs(e1)
            continue
        if f1 == f2 and (e1 > 0) == (e2 > 0):
            n += min(abs(e1), abs(e2))
        break
    return n


def is_prefix(p: TreeVertex, x: TreeVertex) -> bool:
    return common_prefix_length(p, x) == p.length


def tree_distance(x: TreeVertex, y: TreeVertex) -> int:
    return x.length + y.length - 2 * common_prefix_length(x, y)


def geodesic(x: TreeVertex, y: TreeVertex) -> list[TreeVertex]:
    c = common_prefix_length(x, y)
    up = [truncate(x, k) for k in range(x.length, c - 1, -1)]
    down = [truncate(y, k) for k in range(c + 1, y.length + 1)]
    return up + down


Point = Union[TreeVertex, EndPrefix]


def confluent(w: Point, z: Point) -> TreeVertex:
    """The vertex where the geodesics from the root to ``w`` and ``z`` separate."""
    if isinstance(w, EndPrefix) and not isinstance(z, EndPrefix):
        w, z = z, w
    if isinstance(w, TreeVertex) and isinstance(z, TreeVertex):
        return truncate(w, common_prefix_length(w, z))
    if isinstance(w, TreeVertex):
        p = z.prefix
        n = common_prefix_length(w, p)
        if n < z.depth or w.length == z.depth:
            return truncate(w, n)
        raise UnresolvedAtDepth(f"vertex {w} extends beyond the end prefix {z}")
    n = common_prefix_length(w.prefix, z.prefix)
    if n < min(w.depth, z.depth):
        return truncate(w.prefix, n)
    raise UnresolvedAtDepth(f"end prefixes {w} and {z} agree to full resolution")


def gromov_product(w: Point, z: Point) -> int:
    return confluent(w, z).length


def rho(w: Point, z: Point, q: int) -> Fraction:
    """Ultrametric q^-(w|z) on the end compactification, as an exact rational."""
    if isinstance(w, TreeVertex) and isinstance(z, TreeVertex) and w == z:
        return Fraction(0)
    return Fraction(1, q ** gromov_product(w, z))


def _toward(y: TreeVertex, u: EndPrefix):
    """Next letter from ``y`` towards the end ``u``, or None if that is the parent side."""
    n = common_prefix_length(y, u.prefix)
    if n == y.length:
        if y.length < u.depth:
            return u.prefix.letters[y.length]
        raise UnresolvedAtDepth(f"cannot tell which side of {y} the end {u} lies")
    return None


def subtree_member(y: TreeVertex, u: EndPrefix, v: TreeVertex) -> bool:
    """Whether ``v`` lies in the component of ``T - {y}`` containing the end ``u``."""
    if v == y:
        raise ValueError("v must differ from y")
    letter = _toward(y, u)
    below_y = is_prefix(y, v)
    if letter is None:
        return not below_y
    return below_y and v.letters[y.length] == letter


def steiner_edges(points: Sequence[TreeVertex]) -> int:
    """Edge count of the smallest subtree containing ``points``."""
    if not points:
        return 0
    c = points[0].length
    for p in points[1:]:
        c = min(c, common_prefix_length(points[0], p))
    trie: dict = {}
    edges = 0
    for p in points:
        node = trie
        for letter in p.letters[c:]:
            nxt = node.get(letter)
            if nxt is None:
                nxt = node[letter] = {}
                edges += 1
            node = nxt
    return edges


def steiner_tour_length(x: TreeVertex, x2: TreeVertex, S: Iterable[TreeVertex]) -> int:
    """Shortest walk from ``x`` to ``x2`` visiting every vertex of ``S``."""
    pts = [x, x2, *S]
    return 2 * steiner_edges(pts) - tree_distance(x, x2)


_SYL = re.compile(r"(\d+)(?:\^(-?\d+))?")
_WORD = re.compile(r"\d+(?:\^-?\d+)?(?:-\d+(?:\^-?\d+)?)*")


def format_vertex(x: TreeVertex) -> str:
    if not x.syllables:
        return "o"
    return "-".join(str(f) if e == 1 else f"{f}^{e}" for f, e in x.syllables)


def parse_vertex(text: str, sig: FreeProductSignature | None = None) -> TreeVertex:
    """Inverse of :func:`format_vertex`; reduces with ``sig`` when given."""
    text = text.strip()
    if text in ("o", ""):
        return ROOT
    if not _WORD.fullmatch(text):
        raise ValueError(f"malformed word {text!r}")
    syl = [(int(f), int(e) if e else 1) for f, e in _SYL.findall(text)]
    if sig is None:
        return TreeVertex(tuple(syl))
    return sig.reduce(syl)


def iter_prefixes(x: TreeVertex) -> Iterator[TreeVertex]:
    for k in range(x.length + 1):
        yield truncate(x, k)
