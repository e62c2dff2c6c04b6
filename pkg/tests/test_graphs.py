import random

import networkx as nx
import pytest

from gridstab import (
    Graph,
    GridParams,
    InvalidParameter,
    MalformedGraph6,
    are_isomorphic,
    cartesian_product,
    cayley_graph,
    complete_graph,
    connection_set,
    cycle_graph,
    cyclic_group,
    double_cover,
    graph6_decode,
    graph6_encode,
    moebius_ladder,
    path_graph,
    qd_direct,
    standard_graph,
    structural_flags,
    tr_direct,
    twin_pair,
)
from _helpers import random_graph, random_permutation


def components(x):
    seen = [False] * x.vertex_count
    out = 0
    for start in range(x.vertex_count):
        if seen[start]:
            continue
        out += 1
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            for w in x.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return out


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph(2, (0b01, 0b10))

    def test_rejects_asymmetry(self):
        with pytest.raises(ValueError):
            Graph(2, (0b10, 0b00))

    def test_from_edges_collapses(self):
        x = Graph.from_edges(3, [(0, 1), (1, 0), (2, 2)])
        assert x.edge_count == 1

    def test_labels_must_be_distinct(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 1)], labels=["v", "v"])


class TestDoubleCover:
    def test_odd_cycle_doubles_to_one_cycle(self):
        bx = double_cover(cycle_graph(3))
        assert bx.vertex_count == 6
        assert all(bx.degree(v) == 2 for v in range(6))
        assert components(bx) == 1  # C6

    def test_bipartite_input_disconnects(self):
        bx = double_cover(cycle_graph(4))
        assert components(bx) == 2
        flags = structural_flags(bx)
        assert flags.bipartite and not flags.connected

    def test_k4_covers_to_cube(self):
        cube = cartesian_product(
            cartesian_product(complete_graph(2), complete_graph(2)),
            complete_graph(2),
        )
        assert are_isomorphic(double_cover(complete_graph(4)), cube)

    def test_edge_and_degree_bookkeeping(self):
        rng = random.Random(3)
        for _ in range(20):
            x = random_graph(rng, rng.randint(1, 12))
            bx = double_cover(x)
            assert bx.edge_count == 2 * x.edge_count
            assert structural_flags(bx).bipartite
            for v in range(x.vertex_count):
                assert bx.degree(v) == x.degree(v)
                assert bx.degree(v + x.vertex_count) == x.degree(v)

    def test_cover_commutes_with_bipartite_products(self):
        # B(X box Y) is isomorphic to BX box Y for bipartite Y
        m6 = moebius_ladder(6)
        for x in (cycle_graph(3), cycle_graph(5), complete_graph(4), m6):
            for y in (complete_graph(2), cycle_graph(4), path_graph(3)):
                lhs = double_cover(cartesian_product(x, y))
                rhs = cartesian_product(double_cover(x), y)
                assert are_isomorphic(lhs, rhs)


class TestProducts:
    def test_k2_square(self):
        assert are_isomorphic(
            cartesian_product(complete_graph(2), complete_graph(2)),
            cycle_graph(4),
        )

    def test_cube_identity(self):
        cube = cartesian_product(cycle_graph(4), complete_graph(2))
        assert cube.vertex_count == 8
        assert all(cube.degree(v) == 3 for v in range(8))
        assert structural_flags(cube).bipartite

    def test_edge_count_formula(self):
        x, y = cycle_graph(6), cycle_graph(3)
        p = cartesian_product(x, y)
        assert p.vertex_count == 18
        assert p.edge_count == 6 * 3 + 3 * 6 == 36
        assert all(p.degree(v) == 4 for v in range(18))


class TestStandardGraphs:
    def test_complete(self):
        assert standard_graph("complete", 4).edge_count == 6

    def test_moebius_4_is_k4(self):
        assert are_isomorphic(moebius_ladder(4), complete_graph(4))

    def test_moebius_is_circulant(self):
        g = cyclic_group(6)
        m6 = cayley_graph(connection_set(g, [(1,), (3,)]))
        assert are_isomorphic(moebius_ladder(6), m6)

    def test_cycle_two_is_edge(self):
        c2 = standard_graph("cycle", 2)
        assert c2.vertex_count == 2 and c2.edge_count == 1

    def test_invalid_parameters(self):
        for kind, n in (("cycle", 1), ("path", 0), ("complete", 0),
                        ("moebius_ladder", 5), ("moebius_ladder", 2)):
            with pytest.raises(InvalidParameter):
                standard_graph(kind, n)
        with pytest.raises(InvalidParameter):
            standard_graph("wheel", 5)


class TestPredicates:
    def test_flags_c5(self):
        f = structural_flags(cycle_graph(5))
        assert f.connected and not f.bipartite and f.bipartition is None

    def test_flags_c4(self):
        f = structural_flags(cycle_graph(4))
        assert f.connected and f.bipartite
        assert f.bipartition[0] == 0

    def test_twins_k23(self):
        k23 = Graph.from_edges(5, [(u, v) for u in (0, 1) for v in (2, 3, 4)])
        assert twin_pair(k23) is not None

    def test_twins_absent_c5(self):
        assert twin_pair(cycle_graph(5)) is None

    def test_grid_twin_locations(self):
        # the valency-6 triangular grids with twin vertices
        assert twin_pair(tr_direct(GridParams("tr", 3, 3, 0))) is not None
        assert twin_pair(tr_direct(GridParams("tr", 2, 4, 3))) is not None
        # Tr(2,4,1) collapses to a twin-free valency-4 graph
        assert twin_pair(tr_direct(GridParams("tr", 2, 4, 1))) is None


class TestGraph6:
    def test_k2_pinned(self):
        assert graph6_encode(complete_graph(2)) == b"A_"

    def test_round_trip_c5(self):
        c5 = cycle_graph(5)
        assert graph6_decode(graph6_encode(c5)).adjacency == c5.adjacency

    def test_grid_round_trip(self):
        x = qd_direct(GridParams("qd", 3, 6, 0))
        data = graph6_encode(x)
        y = graph6_decode(data)
        assert y.vertex_count == 18 and y.edge_count == 36

    def test_against_networkx(self):
        rng = random.Random(11)
        for _ in range(60):
            n = rng.randint(1, 64)
            x = random_graph(rng, n, rng.random())
            mine = graph6_encode(x)
            g = nx.Graph()
            g.add_nodes_from(range(n))
            g.add_edges_from(x.edges())
            theirs = nx.to_graph6_bytes(g, header=False).strip()
            assert mine == theirs
            back = graph6_decode(theirs)
            assert back.adjacency == x.adjacency

    def test_header_prefix_accepted(self):
        assert graph6_decode(b">>graph6<<A_\n").edge_count == 1

    def test_malformed(self):
        for bad in (b"", b"B", b"A_~", b"~~~", b"A" + bytes([200])):
            with pytest.raises(MalformedGraph6):
                graph6_decode(bad)

    def test_padding_bits_checked(self):
        # C5 body with a nonzero padding bit
        good = bytearray(graph6_encode(cycle_graph(5)))
        good[-1] = 63 + (((good[-1] - 63) | 1))  # flip the final padding bit
        with pytest.raises(MalformedGraph6):
            graph6_decode(bytes(good))


def test_relabel_preserves_structure():
    rng = random.Random(5)
    for _ in range(20):
        x = random_graph(rng, rng.randint(2, 10))
        perm = random_permutation(rng, x.vertex_count)
        y = x.relabel(perm)
        assert y.edge_count == x.edge_count
        for u, v in x.edges():
            assert y.has_edge(perm[u], perm[v])
