"""Cayley graphs over finite abelian groups and the toroidal grid families.

Grids come in two kinds: "qd" (quadrilateral faces: C_n x P_{m+1} with layer m
glued back to layer 0 shifted by r) and "tr" (same, plus one parallel diagonal
per face). grid_to_cayley gives the equivalent abelian Cayley presentation; the
sign convention for the tr kind lives here and nowhere else.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import AbelianGroup, Element, group_from_relations
from .graphs import Graph, InvalidParameter


class InvalidShift(ValueError):
    pass


@dataclass(frozen=True)
class ConnectionSet:
    """An inverse-closed, identity-free, nonempty subset of an abelian group."""

    group: AbelianGroup
    elements: frozenset[Element]

    def __post_init__(self):
        g = self.group
        if not self.elements:
            raise ValueError("connection set is empty")
        if g.identity() in self.elements:
            raise ValueError("connection set contains the identity")
        if {g.negate(s) for s in self.elements} != self.elements:
            raise ValueError("connection set is not inverse-closed")

    @property
    def valency(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list[Element]:
        return sorted(self.elements)


def connection_set(group: AbelianGroup, elements) -> ConnectionSet:
    """Build a ConnectionSet, closing the input under negation."""
    out = set()
    for e in elements:
        e = group.reduce(e)
        out.add(e)
        out.add(group.negate(e))
    return ConnectionSet(group, frozenset(out))


@dataclass(frozen=True)
class GridParams:
    kind: str  # "qd" or "tr"
    m: int
    n: int
    r: int

    def __post_init__(self):
        if self.kind not in ("qd", "tr"):
            raise InvalidParameter(f"unknown grid kind {self.kind!r}")
        if self.m < 2 or self.n < 2:
            raise InvalidParameter("grid needs m >= 2 and n >= 2")
        if not 0 <= self.r < self.n:
            object.__setattr__(self, "r", self.r % self.n)

    def __str__(self):
        return f"{self.kind}:{self.m},{self.n},{self.r}"

    @staticmethod
    def parse(text: str) -> "GridParams":
        try:
            kind, rest = text.split(":")
            m, n, r = (int(v) for v in rest.split(","))
        except ValueError:
            raise InvalidParameter(f"cannot parse grid params {text!r}") from None
        return GridParams(kind, m, n, r)


def cayley_graph(s: ConnectionSet) -> Graph:
    """Vertices are group elements in lexicographic order; g ~ h iff g - h in S."""
    g = s.group
    order = g.order
    elements = list(g.elements())
    index = {e: i for i, e in enumerate(elements)}
    edges = []
    for i, e in enumerate(elements):
        for step in s.elements:
            j = index[g.add(e, step)]
            if i < j:
                edges.append((i, j))
    labels = [repr(e) for e in elements] if order <= 4096 else None
    return Graph.from_edges(order, edges, labels=labels)


def _grid_vertex(x: int, y: int, n: int) -> int:
    return y * n + x


def qd_direct(p: GridParams) -> Graph:
    """Quadrilateral toroidal grid on m*n vertices; (x,y) is vertex y*n + x."""
    m, n, r = p.m, p.n, p.r
    edges = []
    for y in range(m):
        for x in range(n):
            v = _grid_vertex(x, y, n)
            edges.append((v, _grid_vertex((x + 1) % n, y, n)))
            if y < m - 1:
                edges.append((v, _grid_vertex(x, y + 1, n)))
            else:
                edges.append((v, _grid_vertex((x + r) % n, 0, n)))
    return Graph.from_edges(m * n, edges)


def tr_direct(p: GridParams) -> Graph:
    """qd_direct plus the diagonal (x, y) ~ (x+1, y-1) of every face."""
    m, n, r = p.m, p.n, p.r
    base = qd_direct(GridParams("qd", m, n, r))
    edges = list(base.edges())
    for x in range(n):
        for y in range(1, m):
            edges.append((_grid_vertex(x, y, n), _grid_vertex((x + 1) % n, y - 1, n)))
        # y = m identifies (x, m) with (x + r, 0)
        edges.append((_grid_vertex((x + r) % n, 0, n), _grid_vertex((x + 1) % n, m - 1, n)))
    return Graph.from_edges(m * n, edges)


def build_grid(p: GridParams) -> Graph:
    return qd_direct(p) if p.kind == "qd" else tr_direct(p)


def grid_to_cayley(p: GridParams) -> ConnectionSet:
    """Cayley presentation: G = <a, b | m*a = r'*b, n*b = 0>.

    For qd the connection set is {+-a, +-b} with r' = r; for tr it is
    {+-a, +-b, +-(a+b)} built with r' = (-r) mod n, so that
    cayley_graph(grid_to_cayley(p)) is isomorphic to the direct construction.
    """
    r_eff = p.r if p.kind == "qd" else (-p.r) % p.n
    group = group_from_relations(2, [[p.m, -r_eff], [0, p.n]])
    a = group.named_generators["a"]
    b = group.named_generators["b"]
    gens = [a, b] if p.kind == "qd" else [a, b, group.add(a, b)]
    return connection_set(group, gens)


def shift_connection_set(s: ConnectionSet, z: Element) -> ConnectionSet:
    """Elementwise translate S + z for an involution z; may be an invalid set."""
    g = s.group
    z = g.reduce(z)
    if z == g.identity() or g.add(z, z) != g.identity():
        raise InvalidShift("shift must be a nonzero element of order 2")
    shifted = frozenset(g.add(e, z) for e in s.elements)
    if g.identity() in shifted:
        raise InvalidShift("identity lands in the shifted set")
    if {g.negate(e) for e in shifted} != shifted:
        raise InvalidShift("shifted set is not inverse-closed")
    return ConnectionSet(g, shifted)


# -- automorphism seeds ------------------------------------------------------
# Cayley graphs and grids are vertex-transitive by construction; handing the
# known translations to the search engine prunes its root branching from
# |V| alternatives down to one.


def translation_automorphisms(s: ConnectionSet) -> list[list[int]]:
    g = s.group
    elements = list(g.elements())
    index = {e: i for i, e in enumerate(elements)}
    perms = []
    for i in range(g.rank):
        step = tuple(1 if j == i else 0 for j in range(g.rank))
        perms.append([index[g.add(e, step)] for e in elements])
    return perms


def grid_translations(p: GridParams) -> list[list[int]]:
    """The two deck translations of a toroidal grid, as vertex permutations."""
    m, n, r = p.m, p.n, p.r
    horiz = [0] * (m * n)
    vert = [0] * (m * n)
    for y in range(m):
        for x in range(n):
            v = _grid_vertex(x, y, n)
            horiz[v] = _grid_vertex((x + 1) % n, y, n)
            if y < m - 1:
                vert[v] = _grid_vertex(x, y + 1, n)
            else:
                vert[v] = _grid_vertex((x + r) % n, 0, n)
    return [horiz, vert]
