"""Mutable simulation state for lamplighter walks.

Positions and lamp sites live in a trie of reduced letter words that grows as
the walk explores the tree, so one step costs O(letters in the increment)
instead of O(|X_n|). The trie also records, per depth, the last time the
prefix of X_n or a lamp at that depth changed; that is all convergence
detection needs.
"""
from __future__ import annotations

import math

from .rng import AliasTable
from .tree import ROOT, TreeVertex, from_letters
from .wreath import Configuration, GroupElement


class CompiledMeasure:
    """Atoms of a measure as letter-code tuples, ready for the step loop."""

    def __init__(self, mu):
        group = mu.group
        sig = group.sig
        self.group = group
        self.gens = sig.generators
        code = {g: i for i, g in enumerate(self.gens)}
        self.inv = [code[sig.letter_inverse(g)] for g in self.gens]
        self.L = len(self.gens)
        self.r = group.r
        atoms = []
        lamp_radius = []
        for g, _ in mu.atoms:
            lamps = tuple((tuple(code[l] for l in v.letters), s) for v, s in g.eta.sorted_items())
            atoms.append((lamps, tuple(code[l] for l in g.x.letters)))
            lamp_radius.append(max((v.length for v in g.eta), default=0))
        self.atoms = atoms
        self.lamp_radius = lamp_radius
        self.table = AliasTable([float(p) for _, p in mu.atoms])


class LampWalker:
    """State ``(Y_n, X_n)`` of one trajectory plus per-depth change times."""

    def __init__(self, cm: CompiledMeasure, g0: GroupElement | None = None, track_depth: int = 0):
        self.cm = cm
        self.parent = [-1]
        self.last = [-1]
        self.depth = [0]
        self.child: dict[int, int] = {}
        self.lamps: dict[int, int] = {}
        self.t = 0
        self.K = track_depth
        self.prefix_last = [0] * (track_depth + 1)
        self.lamp_last = [0] * (track_depth + 1)
        self.x = 0
        if g0 is not None:
            code = {g: i for i, g in enumerate(cm.gens)}
            self.x = self.node(tuple(code[l] for l in g0.x.letters))
            for v, s in g0.eta.items():
                self.lamps[self.node(tuple(code[l] for l in v.letters))] = s
        self.x0 = self.x

    def node(self, codes, start: int = 0) -> int:
        v = start
        for c in codes:
            v = self._step(v, c)
        return v

    def _step(self, v: int, c: int) -> int:
        if self.last[v] == self.cm.inv[c]:
            return self.parent[v]
        key = v * self.cm.L + c
        w = self.child.get(key)
        if w is None:
            w = len(self.parent)
            self.parent.append(v)
            self.last.append(c)
            self.depth.append(self.depth[v] + 1)
            self.child[key] = w
        return w

    def advance(self, atom_indices) -> None:
        """Apply increments ``atom_indices`` (sequence of atom numbers) in order."""
        parent, last, depth, child, lamps = self.parent, self.last, self.depth, self.child, self.lamps
        inv, L, r, atoms, K = self.cm.inv, self.cm.L, self.cm.r, self.cm.atoms, self.K
        pl, ll = self.prefix_last, self.lamp_last
        x, t = self.x, self.t
        for j in atom_indices:
            t += 1
            lampmoves, xcodes = atoms[j]
            for ycodes, s in lampmoves:
                v = x
                for c in ycodes:
                    if last[v] == inv[c]:
                        v = parent[v]
                    else:
                        key = v * L + c
                        w = child.get(key)
                        if w is None:
                            w = len(parent)
                            parent.append(v)
                            last.append(c)
                            depth.append(depth[v] + 1)
                            child[key] = w
                        v = w
                st = (lamps.get(v, 0) + s) % r
                if st:
                    lamps[v] = st
                else:
                    del lamps[v]
                dv = depth[v]
                if dv <= K:
                    ll[dv] = t
            if xcodes:
                d0 = depth[x]
                low = d0
                for c in xcodes:
                    if last[x] == inv[c]:
                        x = parent[x]
                    else:
                        key = x * L + c
                        w = child.get(key)
                        if w is None:
                            w = len(parent)
                            parent.append(x)
                            last.append(c)
                            depth.append(depth[x] + 1)
                            child[key] = w
                        x = w
                    if depth[x] < low:
                        low = depth[x]
                hi = min(max(d0, depth[x]), K)
                for k in range(low + 1, hi + 1):
                    pl[k] = t
        self.x, self.t = x, t

    # --- reading the state back -------------------------------------------

    def vertex(self, v: int) -> TreeVertex:
        letters = []
        gens, last, parent = self.cm.gens, self.last, self.parent
        while v:
            letters.append(gens[last[v]])
            v = parent[v]
        return from_letters(reversed(letters)) if letters else ROOT

    def ancestor(self, v: int, k: int) -> int:
        while self.depth[v] > k:
            v = self.parent[v]
        return v

    def node_distance(self, a: int, b: int) -> int:
        depth, parent = self.depth, self.parent
        da, db = depth[a], depth[b]
        while depth[a] > depth[b]:
            a = parent[a]
        while depth[b] > depth[a]:
            b = parent[b]
        while a != b:
            a, b = parent[a], parent[b]
        return da + db - 2 * depth[a]

    def element(self) -> GroupElement:
        lamps = {self.vertex(v): s for v, s in self.lamps.items()}
        return GroupElement(Configuration(self.cm.r, lamps), self.vertex(self.x))

    def config_within(self, radius: int) -> Configuration:
        lamps = {self.vertex(v): s for v, s in self.lamps.items() if self.depth[v] <= radius}
        return Configuration(self.cm.r, lamps)

    def tree_displacement(self) -> int:
        return self.node_distance(self.x0, self.x)

    def norm(self) -> int:
        """Lamplighter distance from the identity; valid when the walk started at id."""
        parent = self.parent
        marked = {0}
        edges = 0
        for v in (self.x, *self.lamps):
            while v not in marked:
                marked.add(v)
                edges += 1
                v = parent[v]
        return 2 * edges - self.depth[self.x] + len(self.lamps)

    def stability(self, fraction: float):
        """Per-depth last change times and the deepest stable prefix / lamp ball."""
        n = self.t
        cutoff = n - math.ceil(fraction * n)
        dx = self.depth[self.x]
        prefix_times = {}
        end_depth = 0
        for k in range(1, self.K + 1):
            if dx >= k:
                prefix_times[k] = self.prefix_last[k]
                if self.prefix_last[k] <= cutoff and end_depth == k - 1:
                    end_depth = k
            else:
                prefix_times[k] = None
        lamp_times = {}
        lamp_depth = -1
        running = 0
        for k in range(0, self.K + 1):
            running = max(running, self.lamp_last[k])
            lamp_times[k] = running
            if running <= cutoff and lamp_depth == k - 1:
                lamp_depth = k
        return prefix_times, lamp_times, end_depth, lamp_depth
