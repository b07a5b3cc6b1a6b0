from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from degdouble.graph_core import (
    AverageDegreeAtLeast,
    GraphError,
    MaxDegreeAtLeast,
    canonical_key,
    components,
    cycle_graph,
    degree_profile,
    doubling_compatible,
    from_edge_list_text,
    intersection,
    isolated_vertices,
    make_graph,
    parse_predicate,
    to_edge_list_text,
    union,
)

from oracles import two_regular_edge_sets

C5_A = cycle_graph(5, [1, 2, 3, 4, 5])
C5_B = cycle_graph(5, [1, 3, 5, 2, 4])
C4_A = cycle_graph(4, [1, 2, 3, 4])
C4_B = cycle_graph(4, [1, 2, 4, 3])


def graphs(max_n=7):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        pairs = list(combinations(range(1, n + 1), 2))
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        return make_graph(n, chosen)
    return build()


@st.composite
def graph_pairs(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    pairs = list(combinations(range(1, n + 1), 2))
    a = draw(st.lists(st.sampled_from(pairs), unique=True))
    b = draw(st.lists(st.sampled_from(pairs), unique=True))
    return make_graph(n, a), make_graph(n, b)


class TestMakeGraph:
    def test_four_cycle(self):
        G = make_graph(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
        assert G.edges == ((1, 2), (1, 4), (2, 3), (3, 4))

    def test_empty(self):
        G = make_graph(3, [])
        assert G.n == 3 and G.edges == ()

    @pytest.mark.parametrize("n, edges, message", [
        (3, [(1, 1)], "loop edge"),
        (3, [(1, 2), (2, 1)], "duplicate edge"),
        (3, [(1, 4)], "outside"),
        (0, [], "positive"),
    ])
    def test_rejects(self, n, edges, message):
        with pytest.raises(GraphError, match=message):
            make_graph(n, edges)

    def test_error_names_the_pair(self):
        with pytest.raises(GraphError, match=r"\(2, 2\)"):
            make_graph(3, [(1, 2), (2, 2)])

    def test_order_independent_equality(self):
        assert make_graph(4, [(3, 4), (1, 2)]) == make_graph(4, [(2, 1), (4, 3)])


class TestSetOperations:
    def test_disjoint_five_cycles(self):
        U = union(C5_A, C5_B)
        assert U.edge_count == 10
        assert degree_profile(U).degrees == (4, 4, 4, 4, 4)

    def test_union_idempotent(self):
        assert union(C5_A, C5_A) == C5_A

    def test_union_of_two_four_cycles(self):
        # {12,23,34,14} and {12,24,34,13} together cover all of K4
        U = union(C4_A, C4_B)
        assert U.edge_count == 6
        assert degree_profile(U).degrees == (3, 3, 3, 3)

    def test_intersection(self):
        assert intersection(C5_A, C5_A) == C5_A
        assert intersection(C5_A, C5_B).edge_count == 0
        assert intersection(C4_A, C4_B).edges == ((1, 2), (3, 4))

    def test_mismatched_n(self):
        with pytest.raises(GraphError):
            union(C4_A, C5_A)
        with pytest.raises(GraphError):
            intersection(C4_A, C5_A)
        with pytest.raises(GraphError):
            doubling_compatible(C4_A, C5_A)


class TestDegreeProfile:
    def test_cycle(self):
        p = degree_profile(C4_A)
        assert p.degrees == (2, 2, 2, 2) and p.max_degree == 2 and p.average == 2

    def test_empty(self):
        p = degree_profile(make_graph(3, []))
        assert p.degrees == (0, 0, 0) and p.max_degree == 0 and p.average == 0

    def test_uniform_four(self):
        p = degree_profile(union(C5_A, C5_B))
        assert p.max_degree == 4 and p.average == 4

    @given(graphs())
    def test_handshake(self, G):
        p = degree_profile(G)
        assert sum(p.degrees) == 2 * G.edge_count
        assert p.max_degree >= p.average
        assert isinstance(p.average, Fraction)


class TestDoublingPredicate:
    def test_disjoint_cycles_compatible(self):
        assert doubling_compatible(C5_A, C5_B)

    def test_self_incompatible(self):
        assert not doubling_compatible(C5_A, C5_A)

    def test_four_cycles(self):
        assert not doubling_compatible(C4_A, C4_B)

    def test_average_threshold_exact_boundary(self):
        # union of the two 5-cycles has average exactly 4
        assert doubling_compatible(C5_A, C5_B, AverageDegreeAtLeast(4))
        assert not doubling_compatible(C5_A, C5_B, AverageDegreeAtLeast(Fraction(4000001, 1000000)))
        assert doubling_compatible(C4_A, C4_B, AverageDegreeAtLeast(3))
        assert not doubling_compatible(C4_A, C4_B, AverageDegreeAtLeast(Fraction(7, 2)))

    def test_parse(self):
        assert parse_predicate("maxdeg:4") == MaxDegreeAtLeast(4)
        assert parse_predicate("avgdeg:7/2") == AverageDegreeAtLeast(Fraction(7, 2))
        assert parse_predicate("avgdeg:3.5") == AverageDegreeAtLeast(Fraction(7, 2))
        with pytest.raises(ValueError):
            parse_predicate("mindeg:2")

    def test_negative_thresholds(self):
        with pytest.raises(ValueError):
            MaxDegreeAtLeast(-1)
        with pytest.raises(ValueError):
            AverageDegreeAtLeast(-1)

    @given(graph_pairs())
    def test_degree_additivity(self, pair):
        F, G = pair
        U, I = union(F, G), intersection(F, G)
        for x in range(1, F.n + 1):
            assert U.degree(x) == F.degree(x) + G.degree(x) - I.degree(x)

    @given(graph_pairs(), st.sampled_from([MaxDegreeAtLeast(3), MaxDegreeAtLeast(4),
                                           AverageDegreeAtLeast(3), AverageDegreeAtLeast(Fraction(5, 2))]))
    def test_symmetry(self, pair, pred):
        F, G = pair
        assert doubling_compatible(F, G, pred) == doubling_compatible(G, F, pred)

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_two_regular_equivalence_exhaustive(self, n):
        sets = two_regular_edge_sets(n)
        gs = [make_graph(n, s) for s in sets]
        for F in gs:
            assert not doubling_compatible(F, F)
            for G in gs:
                U, I = union(F, G), intersection(F, G)
                assert degree_profile(U).max_degree <= 4
                for x in range(1, n + 1):
                    assert (U.degree(x) == 4) == (x in isolated_vertices(I))
                assert doubling_compatible(F, G) == bool(isolated_vertices(I))


class TestIsolatedAndComponents:
    def test_isolated(self):
        assert isolated_vertices(make_graph(3, [])) == {1, 2, 3}
        assert isolated_vertices(C4_A) == set()
        assert isolated_vertices(make_graph(5, [(1, 2)])) == {3, 4, 5}

    def test_triangle_factor(self):
        comps, shape = components(make_graph(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]))
        assert [c.kind for c in comps] == ["cycle of length 3"] * 2
        assert shape == (3, 3)

    def test_edge_and_path(self):
        comps, shape = components(make_graph(5, [(1, 2), (3, 4), (4, 5)]))
        assert sorted(c.kind for c in comps) == ["2-edge path", "single edge"]
        assert shape == (3, 2)

    def test_hamilton(self):
        comps, _ = components(cycle_graph(6, [1, 2, 3, 4, 5, 6]))
        assert [c.kind for c in comps] == ["cycle of length 6"]

    def test_other_kinds(self):
        comps, _ = components(make_graph(5, [(1, 2), (1, 3), (1, 4), (1, 5)]))
        assert comps[0].kind == "other"
        comps, _ = components(make_graph(4, [(1, 2), (2, 3), (3, 4)]))
        assert comps[0].kind == "path of 4 vertices"


class TestCanonicalKey:
    def test_ordering_irrelevant(self):
        edges = [(1, 2), (2, 3), (3, 4), (1, 4)]
        assert canonical_key(make_graph(4, edges)) == canonical_key(make_graph(4, edges[::-1]))

    def test_distinguishes(self):
        assert canonical_key(C4_A) != canonical_key(C4_B)
        assert canonical_key(make_graph(3, [])) != canonical_key(make_graph(4, []))

    @given(graphs(), st.randoms())
    def test_stable_under_shuffle(self, G, rnd):
        edges = list(G.edges)
        rnd.shuffle(edges)
        assert canonical_key(make_graph(G.n, [(v, u) if rnd.random() < .5 else (u, v) for u, v in edges])) \
            == canonical_key(G)

    @settings(max_examples=50)
    @given(graph_pairs())
    def test_injective(self, pair):
        F, G = pair
        assert (canonical_key(F) == canonical_key(G)) == (F == G)


class TestEdgeListText:
    def test_format_bit_exact(self):
        assert to_edge_list_text(C4_A) == "n 4\n1 2\n1 4\n2 3\n3 4\n"
        assert to_edge_list_text(make_graph(2, [])) == "n 2\n"

    @given(graphs())
    def test_round_trip(self, G):
        assert from_edge_list_text(to_edge_list_text(G)) == G

    def test_bad_header(self):
        with pytest.raises(GraphError):
            from_edge_list_text("1 2\n")


def test_graphs_are_hashable_values():
    a = make_graph(4, [(1, 2)])
    assert {a, make_graph(4, [(2, 1)])} == {a}
    with pytest.raises(Exception):
        a.n = 5
