"""Shared test oracles, independent of the engine under test."""

from __future__ import annotations

import itertools
import random

from gridstab import Graph


def brute_aut_count(x: Graph) -> int:
    """Automorphism count by backtracking over all vertex assignments.

    Independent oracle: no refinement, no group theory, just position-by-
    position extension with adjacency consistency against already-placed
    vertices. Exponential, fine for |V| <= 8.
    """
    n = x.vertex_count
    degrees = [x.degree(v) for v in range(n)]
    count = 0

    def extend(image, used):
        nonlocal count
        v = len(image)
        if v == n:
            count += 1
            return
        for w in range(n):
            if used & (1 << w) or degrees[w] != degrees[v]:
                continue
            if all(
                x.has_edge(v, u) == x.has_edge(w, image[u]) for u in range(v)
            ):
                image.append(w)
                extend(image, used | (1 << w))
                image.pop()

    extend([], 0)
    return count


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def random_permutation(rng: random.Random, n: int) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


# -- abelian group enumeration oracles ---------------------------------------


def group_automorphisms(g):
    """Every automorphism of g, as a full element map. Brute force."""
    basis = [tuple(1 if j == i else 0 for j in range(g.rank)) for i in range(g.rank)]
    orders = [g.element_order(e) for e in basis]
    candidates = [
        [e for e in g.elements() if orders[i] % g.element_order(e) == 0]
        for i in range(g.rank)
    ]
    autos = []
    for images in itertools.product(*candidates):
        mapping = {}
        for coords in g.elements():
            img = g.identity()
            for c, im in zip(coords, images):
                img = g.add(img, g.scalar_multiply(c, im))
            mapping[coords] = img
        if len(set(mapping.values())) == g.order:
            autos.append(mapping)
    return autos


def unique_pair_shapes(g, autos, want_distinct: int):
    """Generator pairs (a, b) deduplicated up to Aut(g).

    want_distinct = 4 yields valency-4 shapes {+-a, +-b}; want_distinct = 3
    yields triples with distinct {+-a}, {+-b}, {+-(a+b)} sets.
    """
    seen = set()
    for a in g.elements():
        for b in g.elements():
            if want_distinct == 4:
                s = frozenset({a, g.negate(a), b, g.negate(b)})
                if len(s) != 4:
                    continue
                key = s
            else:
                c = g.negate(g.add(a, b))
                pm = frozenset(
                    frozenset((t, g.negate(t))) for t in (a, b, c)
                )
                if len(pm) != 3:
                    continue
                key = frozenset(x for p in pm for x in p)
            if key in seen:
                continue
            seen |= {frozenset(m[e] for e in key) for m in autos}
            yield a, b
