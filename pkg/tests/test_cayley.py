import pytest

from gridstab import (
    ConnectionSet,
    GridParams,
    InvalidParameter,
    InvalidShift,
    automorphism_group,
    are_isomorphic,
    build_grid,
    cayley_graph,
    connection_set,
    cycle_graph,
    cyclic_group,
    direct_product_group,
    grid_to_cayley,
    grid_translations,
    qd_direct,
    shift_connection_set,
    tr_direct,
    translation_automorphisms,
)
from gridstab.aut import is_graph_automorphism


class TestConnectionSet:
    def test_closes_under_negation(self):
        g = cyclic_group(8)
        s = connection_set(g, [(1,), (3,)])
        assert s.elements == frozenset({(1,), (7,), (3,), (5,)})
        assert s.valency == 4

    def test_rejects_identity(self):
        g = cyclic_group(5)
        with pytest.raises(ValueError):
            connection_set(g, [(0,)])

    def test_rejects_empty(self):
        g = cyclic_group(5)
        with pytest.raises(ValueError):
            ConnectionSet(g, frozenset())

    def test_rejects_non_inverse_closed(self):
        g = cyclic_group(5)
        with pytest.raises(ValueError):
            ConnectionSet(g, frozenset({(1,)}))


class TestCayleyGraph:
    def test_z4_is_c4(self):
        x = cayley_graph(connection_set(cyclic_group(4), [(1,)]))
        assert are_isomorphic(x, cycle_graph(4))

    def test_z3xz3_triple(self):
        g = direct_product_group([3, 3])
        a, b = g.named_generators["a"], g.named_generators["b"]
        x = cayley_graph(connection_set(g, [a, b, g.add(a, b)]))
        assert x.vertex_count == 9
        assert x.edge_count == 27
        assert all(x.degree(v) == 6 for v in range(9))

    def test_vertex_transitive(self):
        for s in (
            connection_set(cyclic_group(10), [(1,), (3,)]),
            connection_set(direct_product_group([2, 6]), [(1, 0), (0, 1)]),
        ):
            x = cayley_graph(s)
            order = automorphism_group(
                x, seeds=translation_automorphisms(s)
            ).order
            assert order % s.group.order == 0

    def test_connected_iff_generates(self):
        g = cyclic_group(12)
        for gens in ([(1,)], [(2,)], [(3,), (4,)], [(4,), (6,)]):
            s = connection_set(g, gens)
            x = cayley_graph(s)
            reach = {0}
            stack = [0]
            while stack:
                v = stack.pop()
                for w in x.neighbors(v):
                    if w not in reach:
                        reach.add(w)
                        stack.append(w)
            assert (len(reach) == 12) == g.generates(gens)


class TestGridParams:
    def test_str_parse_round_trip(self):
        p = GridParams("qd", 3, 8, 2)
        assert str(p) == "qd:3,8,2"
        assert GridParams.parse("qd:3,8,2") == p

    def test_shift_normalized(self):
        assert GridParams("tr", 2, 5, 7).r == 2
        assert GridParams("tr", 2, 5, -1).r == 4

    def test_invalid(self):
        with pytest.raises(InvalidParameter):
            GridParams("hex", 3, 3, 0)
        with pytest.raises(InvalidParameter):
            GridParams("qd", 1, 5, 0)
        with pytest.raises(InvalidParameter):
            GridParams.parse("qd:3,8")


class TestDirectGrids:
    def test_qd_counts(self):
        x = qd_direct(GridParams("qd", 3, 8, 2))
        assert x.vertex_count == 24
        assert x.edge_count == 48
        assert all(x.degree(v) == 4 for v in range(24))

    def test_tr_counts(self):
        x = tr_direct(GridParams("tr", 4, 3, 2))
        assert x.vertex_count == 12
        assert x.edge_count == 36
        assert all(x.degree(v) == 6 for v in range(12))

    def test_translations_are_automorphisms(self):
        for p in (GridParams("qd", 3, 8, 2), GridParams("tr", 4, 5, 3)):
            x = build_grid(p)
            for perm in grid_translations(p):
                assert is_graph_automorphism(x, perm)


class TestGridToCayley:
    def test_tr_presentation_pinned(self):
        s = grid_to_cayley(GridParams("tr", 4, 3, 2))
        g = s.group
        assert g.invariant_factors == (12,)
        a, b = g.named_generators["a"], g.named_generators["b"]
        assert b == g.scalar_multiply(4, a)
        assert s.valency == 6

    def test_qd_presentation_pinned(self):
        s = grid_to_cayley(GridParams("qd", 3, 6, 0))
        assert s.group.invariant_factors == (3, 6)
        assert s.valency == 4

    def test_cayley_form_matches_direct(self):
        # the presentation and the face-by-face construction agree
        for kind in ("qd", "tr"):
            for m, n, r in ((2, 4, 1), (3, 5, 2), (4, 3, 2), (3, 8, 3), (5, 4, 1)):
                p = GridParams(kind, m, n, r)
                s = grid_to_cayley(p)
                assert are_isomorphic(
                    build_grid(p),
                    cayley_graph(s),
                    seeds_x=grid_translations(p),
                    seeds_y=translation_automorphisms(s),
                )

    def test_translation_seeds(self):
        s = grid_to_cayley(GridParams("tr", 3, 4, 1))
        x = cayley_graph(s)
        for perm in translation_automorphisms(s):
            assert is_graph_automorphism(x, perm)


class TestShift:
    def test_fixed_point_shift(self):
        g = cyclic_group(8)
        s = connection_set(g, [(1,), (3,)])
        shifted = shift_connection_set(s, (4,))
        assert shifted.elements == s.elements

    def test_proper_shift(self):
        g = cyclic_group(12)
        s = connection_set(g, [(1,), (4,)])
        shifted = shift_connection_set(s, (6,))
        assert shifted.elements == frozenset({(7,), (5,), (10,), (2,)})

    def test_identity_lands_in_set(self):
        g = cyclic_group(8)
        s = connection_set(g, [(1,), (3,), (4,)])
        with pytest.raises(InvalidShift):
            shift_connection_set(s, (4,))

    def test_shift_must_be_involution(self):
        g = cyclic_group(8)
        s = connection_set(g, [(1,), (3,)])
        for bad in ((0,), (1,), (2,)):
            with pytest.raises(InvalidShift):
                shift_connection_set(s, bad)

    def test_shift_preserves_inverse_closure(self):
        # for an involution z, (S + z) is automatically inverse-closed, so the
        # only possible rejection is the identity landing in the set
        g = direct_product_group([2, 8])
        s = connection_set(g, [(0, 1), (1, 2)])
        for z in g.elements_of_order_two():
            try:
                shifted = shift_connection_set(s, z)
            except InvalidShift:
                assert z in s.elements
                continue
            assert {g.negate(e) for e in shifted.elements} == shifted.elements
