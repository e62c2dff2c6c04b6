"""Simple undirected graphs over integer vertices, with bitset adjacency.

Includes the standard constructions used throughout the package, the canonical
bipartite double cover, Cartesian products, connectivity/bipartiteness flags,
twin detection, and graph6 encoding (header-less de-facto standard).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


class InvalidParameter(ValueError):
    pass


class MalformedGraph6(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. adjacency[v] is a bitmask of neighbours of v."""

    vertex_count: int
    adjacency: tuple[int, ...]
    vertex_labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 1:
            raise InvalidParameter("graph needs at least one vertex")
        if len(self.adjacency) != n:
            raise ValueError("adjacency length mismatch")
        for v, row in enumerate(self.adjacency):
            if row >> n:
                raise ValueError("adjacency bit out of range")
            if row & (1 << v):
                raise ValueError("self-loop")
        for v in range(n):
            for w in _bits(self.adjacency[v]):
                if not self.adjacency[w] & (1 << v):
                    raise ValueError("adjacency not symmetric")
        if self.vertex_labels is not None:
            if len(self.vertex_labels) != n or len(set(self.vertex_labels)) != n:
                raise ValueError("labels must be distinct, one per vertex")

    @staticmethod
    def from_edges(n: int, edges, labels=None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                continue  # collapsed: simple graphs only
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(n, tuple(adj), tuple(labels) if labels else None)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] & (1 << v))

    def neighbors(self, v: int):
        return _bits(self.adjacency[v])

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.adjacency) // 2

    def edges(self):
        for u in range(self.vertex_count):
            for v in _bits(self.adjacency[u] >> u):
                yield (u, u + v)

    def relabel(self, perm) -> "Graph":
        """Image under the vertex map v -> perm[v]."""
        n = self.vertex_count
        adj = [0] * n
        for v in range(n):
            row = 0
            for w in _bits(self.adjacency[v]):
                row |= 1 << perm[w]
            adj[perm[v]] = row
        return Graph(n, tuple(adj))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- constructions ---------------------------------------------------------


def double_cover(x: Graph) -> Graph:
    """Canonical bipartite double cover: (v,i) indexed as v + i*n."""
    n = x.vertex_count
    adj = [0] * (2 * n)
    for v in range(n):
        adj[v] = x.adjacency[v] << n
        adj[v + n] = x.adjacency[v]
    return Graph(2 * n, tuple(adj))


def cartesian_product(x: Graph, y: Graph) -> Graph:
    """Vertex (u, v) indexed as u * |V(Y)| + v."""
    ny = y.vertex_count
    edges = []
    for u in range(x.vertex_count):
        for v in range(ny):
            base = u * ny + v
            for w in _bits(y.adjacency[v]):
                edges.append((base, u * ny + w))
            for t in _bits(x.adjacency[u]):
                edges.append((base, t * ny + v))
    return Graph.from_edges(x.vertex_count * ny, edges)


def cycle_graph(n: int) -> Graph:
    """C_n; by convention cycle_graph(2) is a single edge K_2."""
    if n < 2:
        raise InvalidParameter("cycle needs n >= 2")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidParameter("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidParameter("complete graph needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def moebius_ladder(vertices: int) -> Graph:
    """M_{2n} on the given (even) vertex count: a 2n-cycle plus antipodal rungs."""
    if vertices < 4 or vertices % 2:
        raise InvalidParameter("Moebius ladder needs even vertex count >= 4")
    half = vertices // 2
    edges = [(i, (i + 1) % vertices) for i in range(vertices)]
    edges += [(i, i + half) for i in range(half)]
    return Graph.from_edges(vertices, edges)


_STANDARD = {
    "cycle": cycle_graph,
    "path": path_graph,
    "complete": complete_graph,
    "moebius_ladder": moebius_ladder,
}


def standard_graph(kind: str, n: int) -> Graph:
    try:
        builder = _STANDARD[kind]
    except KeyError:
        raise InvalidParameter(f"unknown graph kind {kind!r}") from None
    return builder(n)


# -- structural predicates ---------------------------------------------------


@dataclass(frozen=True)
class StructuralFlags:
    connected: bool
    bipartite: bool
    bipartition: tuple[int, ...] | None  # 2-coloring, color of vertex 0 is 0


def structural_flags(x: Graph) -> StructuralFlags:
    n = x.vertex_count
    color = [-1] * n
    connected = True
    bipartite = True
    for start in range(n):
        if color[start] >= 0:
            continue
        if start > 0:
            connected = False
        color[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in x.neighbors(v):
                if color[w] < 0:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    bipartite = False
    return StructuralFlags(connected, bipartite, tuple(color) if bipartite else None)


def distances_from(x: Graph, start: int) -> list[int]:
    """BFS distances; unreachable vertices get -1."""
    dist = [-1] * x.vertex_count
    dist[start] = 0
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in x.neighbors(v):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def twin_pair(x: Graph) -> tuple[int, int] | None:
    """Some pair of distinct vertices with identical open neighbourhoods."""
    seen: dict[int, int] = {}
    for v in range(x.vertex_count):
        row = x.adjacency[v]
        if row in seen:
            return (seen[row], v)
        seen[row] = v
    return None


# -- graph6 ------------------------------------------------------------------


def graph6_encode(x: Graph) -> bytes:
    n = x.vertex_count
    if n <= 62:
        head = bytes([n + 63])
    elif n <= 258047:
        head = bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    else:
        raise InvalidParameter("graph6 encoder limited to < 2^18 vertices")
    bits = []
    for v in range(1, n):
        col = x.adjacency[v]
        for u in range(v):
            bits.append((col >> u) & 1)
    while len(bits) % 6:
        bits.append(0)
    body = bytes(
        63 + (bits[i] << 5 | bits[i + 1] << 4 | bits[i + 2] << 3
              | bits[i + 3] << 2 | bits[i + 4] << 1 | bits[i + 5])
        for i in range(0, len(bits), 6)
    )
    return head + body


def graph6_decode(data: bytes) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise MalformedGraph6("empty input")
    if data[0] == 126:
        if len(data) < 4 or data[1] == 126:
            raise MalformedGraph6("unsupported or truncated size prefix")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    if n < 1:
        raise MalformedGraph6("vertex count out of range")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise MalformedGraph6(f"expected {need} body bytes, got {len(body)}")
    bits = []
    for ch in body:
        val = ch - 63
        if not 0 <= val < 64:
            raise MalformedGraph6("byte out of graph6 range")
        bits.extend((val >> s) & 1 for s in (5, 4, 3, 2, 1, 0))
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    if any(bits[k:]):
        raise MalformedGraph6("nonzero padding bits")
    return Graph.from_edges(n, edges)
