"""Exact graph automorphism groups, canonical forms, and isomorphism testing.

The engine is an individualization-refinement backtracking search over ordered
partitions (the classic canonical-labeling scheme): refinement is plain 1-D
equitable refinement, the branching cell is the first smallest non-singleton
cell, and discovered automorphisms prune the search through orbit merging.
Group orders come from a base / strong-generating-set chain.

Searches can be seeded with externally known automorphisms (e.g. the
translations of a Cayley graph); seeds are verified before use and only ever
tighten the pruning, never the answer.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from math import prod

from .graphs import Graph, graph6_encode

DEFAULT_NODE_BUDGET = 10**7
DEFAULT_VERTEX_LIMIT = 512

_engine_calls = 0


def engine_call_count() -> int:
    """Number of backtracking searches run since import (used by CLI tests)."""
    return _engine_calls


class SearchLimitExceeded(RuntimeError):
    pass


def _default_budget() -> int:
    env = os.environ.get("GRIDSTAB_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


# -- permutations (tuples; p then q composes as q[p[x]]) ---------------------


def perm_mul(p, q):
    return tuple(map(q.__getitem__, p))


def perm_inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_identity(n):
    return tuple(range(n))


def is_graph_automorphism(x: Graph, perm) -> bool:
    n = x.vertex_count
    if sorted(perm) != list(range(n)):
        return False
    for v in range(n):
        image = 0
        for w in x.neighbors(v):
            image |= 1 << perm[w]
        if image != x.adjacency[perm[v]]:
            return False
    return True


# -- equitable refinement ----------------------------------------------------


def _mask(cell) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _refine(adj, cells: list[list[int]], queue: deque) -> None:
    """Refine the ordered partition in place until equitable.

    queue holds splitter bitmasks; every fragment produced is re-enqueued, so
    starting from an equitable partition plus the fragments of a manual split
    (or from any partition with all its cells enqueued) the fixpoint is the
    coarsest equitable refinement. Fragments are ordered by neighbour count.
    """
    while queue:
        w = queue.popleft()
        i = 0
        while i < len(cells):
            cell = cells[i]
            if len(cell) > 1:
                buckets: dict[int, list[int]] = {}
                for v in cell:
                    buckets.setdefault((adj[v] & w).bit_count(), []).append(v)
                if len(buckets) > 1:
                    frags = [buckets[c] for c in sorted(buckets)]
                    cells[i : i + 1] = frags
                    for f in frags:
                        queue.append(_mask(f))
                    i += len(frags)
                    continue
            i += 1


def equitable_refinement(x: Graph, coloring) -> tuple[tuple[int, ...], ...]:
    """Coarsest equitable partition refining the given one. Idempotent."""
    cells = [sorted(c) for c in coloring]
    seen = [v for c in cells for v in c]
    if sorted(seen) != list(range(x.vertex_count)):
        raise ValueError("coloring is not a partition of the vertex set")
    _refine(x.adjacency, cells, deque(_mask(c) for c in cells))
    return tuple(tuple(c) for c in cells)


# -- the backtracking search -------------------------------------------------


class _Leaf:
    __slots__ = ("trace", "cert", "pos", "order_key")

    def __init__(self, trace, cert, pos):
        self.trace = trace
        self.cert = cert
        self.pos = pos
        self.order_key = (trace, cert)


class _Search:
    def __init__(self, x: Graph, node_budget, seeds):
        self.adj = x.adjacency
        self.n = x.vertex_count
        self.budget = node_budget
        self.nodes = 0
        self.gens: list[tuple[int, ...]] = []
        for s in seeds or ():
            s = tuple(s)
            if not is_graph_automorphism(x, s):
                raise ValueError("seed is not an automorphism of the graph")
            if s != perm_identity(self.n) and s not in self.gens:
                self.gens.append(s)
        self.first: _Leaf | None = None
        self.best: _Leaf | None = None
        self.trace: list[tuple[int, ...]] = []
        self.prefix: list[int] = []

    def run(self):
        global _engine_calls
        _engine_calls += 1
        cells = [list(range(self.n))]
        _refine(self.adj, cells, deque([_mask(cells[0])]))
        self._node(cells)
        return self

    def _node(self, cells):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchLimitExceeded(f"node budget {self.budget} exhausted")
        self.trace.append(tuple(len(c) for c in cells))
        try:
            if self.first is not None and not self._worth_exploring():
                return
            sizes = [len(c) for c in cells]
            if max(sizes) == 1:
                self._leaf(cells)
                return
            target_size = min(s for s in sizes if s > 1)
            ti = sizes.index(target_size)
            tried: list[int] = []
            for v in sorted(cells[ti]):
                if tried and self._in_known_orbit(v, tried):
                    continue
                tried.append(v)
                child = [list(c) for c in cells]
                rest = [w for w in child[ti] if w != v]
                child[ti : ti + 1] = [[v], rest]
                _refine(self.adj, child, deque([1 << v, _mask(rest)]))
                self.prefix.append(v)
                self._node(child)
                self.prefix.pop()
        finally:
            self.trace.pop()

    def _worth_exploring(self) -> bool:
        d = len(self.trace)
        ft = self.first.trace
        eq_first = d <= len(ft) and all(a == b for a, b in zip(self.trace, ft))
        if eq_first:
            return True
        bt = self.best.trace
        k = min(d, len(bt))
        for a, b in zip(self.trace, bt):
            if a != b:
                return a > b
        # equal on the overlap; a deeper node than a leaf trace cannot happen
        # with equal prefixes, but err on the side of exploring
        return True

    def _in_known_orbit(self, v, tried) -> bool:
        gens = [g for g in self.gens if all(g[p] == p for p in self.prefix)]
        if not gens:
            return False
        orbit = {v}
        stack = [v]
        tried_set = set(tried)
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if y not in orbit:
                    if y in tried_set:
                        return True
                    orbit.add(y)
                    stack.append(y)
        return False

    def _leaf(self, cells):
        pos = [0] * self.n
        for p, c in enumerate(cells):
            pos[c[0]] = p
        pos = tuple(pos)
        cert = self._certificate(pos, cells)
        leaf = _Leaf(tuple(self.trace), cert, pos)
        if self.first is None:
            self.first = leaf
            self.best = leaf
            return
        if cert == self.first.cert:
            self._found_automorphism(self.first.pos, pos)
            return
        if leaf.order_key > self.best.order_key:
            self.best = leaf
        elif cert == self.best.cert:
            self._found_automorphism(self.best.pos, pos)

    def _certificate(self, pos, cells):
        rows = [0] * self.n
        for c in cells:
            v = c[0]
            image = 0
            for w in _bit_vertices(self.adj[v]):
                image |= 1 << pos[w]
            rows[pos[v]] = image
        return tuple(rows)

    def _found_automorphism(self, pos_ref, pos_new):
        # relabel(X, pos_new) == relabel(X, pos_ref), hence pos_ref^-1 . pos_new
        # maps X onto itself
        gamma = perm_mul(pos_new, perm_inverse(pos_ref))
        if gamma == perm_identity(self.n) or gamma in self.gens:
            return
        self.gens.append(gamma)


def _bit_vertices(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- Schreier-Sims -----------------------------------------------------------


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    generators: tuple[tuple[int, ...], ...]
    base: tuple[int, ...]
    strong_generators: tuple[tuple[tuple[int, ...], ...], ...]  # per level
    order: int

    def contains_point_moving(self, v: int) -> bool:
        return any(g[v] != v for g in self.generators)


def schreier_sims(degree: int, generators) -> PermutationGroup:
    """Deterministic base and strong generating set with verified closure.

    Every Schreier generator (product of a coset representative and a strong
    generator) is sifted; any nontrivial residue is added and the affected
    levels are rebuilt, so the reported order is exact.
    """
    ident = perm_identity(degree)
    gens = []
    for g in generators:
        g = tuple(g)
        if g != ident and g not in gens:
            gens.append(g)
    base: list[int] = []
    sgs: list[tuple[int, ...]] = []

    def extend_base(p):
        if all(p[b] == b for b in base):
            base.append(next(x for x in range(degree) if p[x] != x))

    for g in gens:
        extend_base(g)
        sgs.append(g)

    def level_data():
        levels = []
        transversals = []
        for i, b in enumerate(base):
            lg = [g for g in sgs if all(g[x] == x for x in base[:i])]
            trans = {b: ident}
            queue = deque([b])
            while queue:
                x = queue.popleft()
                for g in lg:
                    y = g[x]
                    if y not in trans:
                        trans[y] = perm_mul(trans[x], g)
                        queue.append(y)
            levels.append(lg)
            transversals.append(trans)
        return levels, transversals

    def sift(p, transversals, start=0):
        for i in range(start, len(base)):
            x = p[base[i]]
            rep = transversals[i].get(x)
            if rep is None:
                return p
            p = perm_mul(p, perm_inverse(rep))
        return p

    while True:
        levels, transversals = level_data()
        new_gen = None
        for i in reversed(range(len(base))):
            seen = set()
            for x, rep in transversals[i].items():
                for g in levels[i]:
                    sg = perm_mul(perm_mul(rep, g), perm_inverse(transversals[i][g[x]]))
                    if sg == ident or sg in seen:
                        continue
                    seen.add(sg)
                    residue = sift(sg, transversals, i + 1)
                    if residue != ident:
                        new_gen = residue
                        break
                if new_gen:
                    break
            if new_gen:
                break
        if new_gen is None:
            order = prod(len(t) for t in transversals) if base else 1
            per_level = tuple(tuple(lg) for lg in levels)
            return PermutationGroup(degree, tuple(gens), tuple(base), per_level, order)
        extend_base(new_gen)
        sgs.append(new_gen)


# -- public operations ---------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    canonical_labeling: tuple[int, ...]  # vertex -> canonical position
    certificate: bytes  # graph6 of the relabeled graph


def _run_search(x: Graph, node_budget=None, seeds=None, max_vertices=DEFAULT_VERTEX_LIMIT):
    if x.vertex_count > max_vertices:
        raise SearchLimitExceeded(
            f"graph has {x.vertex_count} vertices, engine limit is {max_vertices}"
        )
    budget = node_budget if node_budget is not None else _default_budget()
    return _Search(x, budget, seeds).run()


def automorphism_group(x: Graph, node_budget=None, seeds=None) -> PermutationGroup:
    """Generators and exact order of the full automorphism group of x."""
    search = _run_search(x, node_budget, seeds)
    for g in search.gens:
        if not is_graph_automorphism(x, g):
            raise AssertionError("engine produced a non-automorphism")  # pragma: no cover
    return schreier_sims(x.vertex_count, search.gens)


def canonical_form(x: Graph, node_budget=None, seeds=None) -> CanonicalForm:
    """A certificate invariant under vertex relabeling."""
    search = _run_search(x, node_budget, seeds)
    pos = search.best.pos
    return CanonicalForm(pos, graph6_encode(x.relabel(pos)))


def are_isomorphic(x: Graph, y: Graph, node_budget=None, seeds_x=None, seeds_y=None) -> bool:
    if x.vertex_count != y.vertex_count or x.edge_count != y.edge_count:
        return False
    if sorted(map(x.degree, range(x.vertex_count))) != sorted(
        map(y.degree, range(y.vertex_count))
    ):
        return False
    cx = canonical_form(x, node_budget, seeds_x)
    cy = canonical_form(y, node_budget, seeds_y)
    return cx.certificate == cy.certificate


def isomorphism(x: Graph, y: Graph, node_budget=None, seeds_x=None, seeds_y=None):
    """A vertex bijection x -> y, or None. Verified before returning."""
    if x.vertex_count != y.vertex_count:
        return None
    cx = canonical_form(x, node_budget, seeds_x)
    cy = canonical_form(y, node_budget, seeds_y)
    if cx.certificate != cy.certificate:
        return None
    mapping = perm_mul(cx.canonical_labeling, perm_inverse(cy.canonical_labeling))
    for u in range(x.vertex_count):
        for w in x.neighbors(u):
            if not y.has_edge(mapping[u], mapping[w]):  # pragma: no cover
                raise AssertionError("canonical forms matched but map is not an isomorphism")
    return mapping
