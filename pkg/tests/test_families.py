import random
from fractions import Fraction
from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from degdouble.clique import max_clique
from degdouble.enumeration import (
    PartitionShape,
    canonical_order,
    hamilton_cycles,
    hamilton_paths,
    perfect_matchings,
    two_regular_graphs,
)
from degdouble.families import (
    Family,
    compatibility_graph,
    compatibility_matrix,
    cover_upper_bound,
    greedy_family,
    incompatible_count,
    is_inclusion_maximal,
    max_family_exact,
    meets_each_class_at_most_once,
    path_families,
    solve_universe,
    theorem3_sandwich,
    triangle_family,
    triangle_family_size,
    triangle_split,
    verify_family,
)
from degdouble.graph_core import (
    DEFAULT_PREDICATE,
    AverageDegreeAtLeast,
    MaxDegreeAtLeast,
    cycle_graph,
    intersection,
    make_graph,
)

import oracles

C5_A = cycle_graph(5, [1, 2, 3, 4, 5])
C5_B = cycle_graph(5, [1, 3, 5, 2, 4])


class _Pairwise:
    """Wraps a degree predicate so the generic scalar path is exercised."""

    def __init__(self, inner):
        self.inner = inner

    def compatible(self, F, G):
        return self.inner.compatible(F, G)


def random_adjacency(N, p, seed):
    rnd = random.Random(seed)
    adj = [0] * N
    for i, j in combinations(range(N), 2):
        if rnd.random() < p:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


class TestCompatibilityMatrix:
    @pytest.mark.parametrize("pred", [MaxDegreeAtLeast(4), MaxDegreeAtLeast(3), MaxDegreeAtLeast(0),
                                      AverageDegreeAtLeast(3), AverageDegreeAtLeast(Fraction(7, 2))])
    def test_bulk_matches_scalar(self, pred):
        cands = list(two_regular_graphs(6))
        assert np.array_equal(compatibility_matrix(cands, pred), compatibility_matrix(cands, _Pairwise(pred)))

    def test_threads_identical(self):
        cands = list(hamilton_cycles(7))
        one = compatibility_matrix(cands, threads=1)
        assert np.array_equal(one, compatibility_matrix(cands, threads=4))
        assert np.array_equal(one, one.T) and not one.diagonal().any()

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            compatibility_matrix([C5_A, C5_A])

    def test_graph_edge_count(self):
        assert compatibility_graph([C5_A, C5_B]).edge_count() == 1


class TestClique:
    @pytest.mark.parametrize("seed", range(8))
    def test_against_networkx(self, seed):
        N = 30 + seed
        adj = random_adjacency(N, 0.5, seed)
        G = nx.Graph()
        G.add_nodes_from(range(N))
        G.add_edges_from((i, j) for i in range(N) for j in range(i + 1, N) if adj[i] >> j & 1)
        expected = max(len(c) for c in nx.find_cliques(G))
        res = max_clique(adj)
        assert res.exact and len(res.clique) == expected
        assert all(adj[a] >> b & 1 for a, b in combinations(res.clique, 2))

    def test_empty_and_edgeless(self):
        assert max_clique([]).clique == []
        assert len(max_clique([0, 0, 0]).clique) == 1

    def test_target_stops(self):
        adj = random_adjacency(25, 0.6, 1)
        full = max_clique(adj)
        res = max_clique(adj, target=len(full.clique))
        assert len(res.clique) == len(full.clique)


class TestGreedy:
    def test_five_cycles_example(self):
        fam = greedy_family([C5_A, C5_B])
        assert fam.members == (C5_A, C5_B)
        assert verify_family(fam)

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_valid_and_maximal(self, n):
        fam = greedy_family(hamilton_cycles(n), universe_tag="hamilton-cycles")
        assert verify_family(fam)
        assert is_inclusion_maximal(fam, hamilton_cycles(n))

    def test_known_sizes(self):
        assert len(greedy_family(hamilton_cycles(4))) == 1
        assert len(greedy_family(hamilton_cycles(5))) == 6


class TestVerify:
    def test_failing_pair_reported(self):
        C4_A = cycle_graph(4, [1, 2, 3, 4])
        C4_B = cycle_graph(4, [1, 2, 4, 3])
        res = verify_family(Family(4, (C4_A, C4_B)))
        assert not res and set(res.failing_pair) == {C4_A, C4_B}

    def test_duplicate(self):
        res = verify_family(Family(5, (C5_A, C5_A)))
        assert not res and res.reason == "duplicate member"

    def test_empty_and_singleton(self):
        assert verify_family(Family(5, ()))
        assert verify_family(Family(5, (C5_A,)))

    def test_jsonl_round_trip(self):
        fam = greedy_family(hamilton_cycles(5), universe_tag="hamilton-cycles")
        assert Family.from_jsonl(fam.to_jsonl()) == fam


class TestExact:
    @pytest.mark.parametrize("n", [4, 5])
    def test_q_small_against_brute_force(self, n):
        cycles = list(hamilton_cycles(n))
        rep = max_family_exact(cycles, budget=60)
        assert rep.status == "exact"
        assert rep.value == oracles.max_family_bruteforce(
            [frozenset(C.edges) for C in cycles],
            lambda a, b: oracles.union_max_degree(n, a, b) >= 4)
        assert verify_family(rep.witness)

    def test_q_values(self):
        assert [solve_universe("hamilton-cycles", n, budget=60).value for n in (4, 5, 6)] == [1, 6, 7]

    def test_q7_certified(self):
        rep = solve_universe("hamilton-cycles", 7, budget=120)
        assert (rep.value, rep.status, rep.certificate) == (45, "exact", "upper-bound-met")

    def test_without_cover_bound_same_value(self):
        a = solve_universe("hamilton-cycles", 6, budget=60, use_cover_bound=False)
        assert (a.value, a.status, a.certificate) == (7, "exact", "search-complete")

    def test_transitive_flag_does_not_change_value(self):
        cycles = canonical_order(hamilton_cycles(6))
        assert max_family_exact(cycles, transitive=True).value == max_family_exact(cycles).value

    def test_average_degree_n5(self):
        cycles = list(hamilton_cycles(5))
        rep = max_family_exact(cycles, AverageDegreeAtLeast(4), budget=60)
        brute = oracles.max_family_bruteforce(
            [frozenset(C.edges) for C in cycles], lambda a, b: len(a | b) * 2 >= 4 * 5)
        assert rep.value == brute == 2 and rep.status == "exact"
        F, G = rep.witness.members
        assert intersection(F, G).edge_count == 0

    def test_r6(self):
        rep = solve_universe("two-regular", 6, budget=120)
        assert rep.value == 10 and rep.status == "exact"

    def test_budget_must_be_positive(self):
        with pytest.raises(ValueError):
            max_family_exact([C5_A], budget=0)

    def test_data_has_no_timing(self):
        rep = solve_universe("hamilton-cycles", 5, budget=30)
        assert "elapsed_ms" not in rep.data() and "elapsed_ms" in rep.to_json()

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_random_subfamilies_match_brute_force(self, seed):
        rnd = random.Random(seed)
        cands = rnd.sample(list(two_regular_graphs(6)), 14)
        rep = max_family_exact(cands, budget=30)
        brute = oracles.max_family_bruteforce(
            [frozenset(C.edges) for C in cands], lambda a, b: oracles.union_max_degree(6, a, b) >= 4)
        assert rep.value == brute


class TestTriangleFamily:
    @pytest.mark.parametrize("n", range(3, 10))
    def test_valid(self, n):
        fam = triangle_family(n)
        assert verify_family(fam)
        assert len(fam) == triangle_family_size(n)

    @pytest.mark.parametrize("n, size", [(3, 1), (6, 10), (9, 280)])
    def test_sizes(self, n, size):
        assert len(triangle_family(n)) == size

    def test_split(self):
        assert [triangle_split(n) for n in (3, 4, 5, 6, 7, 8, 9)] == \
            [(1, 0), (0, 4), (0, 5), (2, 0), (1, 4), (1, 5), (3, 0)]

    def test_members_two_regular(self):
        for G in triangle_family(8).members:
            assert set(G.degrees()) == {2}


class TestCoverBound:
    def test_matching_n4(self):
        cb = cover_upper_bound(4, "matching")
        assert cb.stated == 3 and cb.double_counting == Fraction(3, 2) and cb.certified_max == 1
        assert cb.class_sizes_uniform and cb.members_uniform and cb.patterns_per_member == 2

    def test_near_matching_n5(self):
        cb = cover_upper_bound(5, "near-matching")
        assert cb.stated == 15 and cb.double_counting == 6

    @pytest.mark.parametrize("n, kind", [(6, "matching"), (7, "near-matching"), (8, "matching")])
    def test_uniform(self, n, kind):
        cb = cover_upper_bound(n, kind)
        assert cb.class_sizes_uniform and cb.members_uniform

    def test_witness_meets_classes_once(self):
        rep = solve_universe("hamilton-cycles", 6, budget=60)
        cb = cover_upper_bound(6, "matching", witness=rep.witness)
        assert cb.witness_ok
        assert rep.value <= cb.double_counting

    def test_classes_are_incompatible(self):
        for P in perfect_matchings(6):
            cls = [C for C in hamilton_cycles(6) if C.mask & P.mask == P.mask]
            assert not any(DEFAULT_PREDICATE.compatible(a, b) for a, b in combinations(cls, 2))

    def test_violating_family(self):
        cycles = list(hamilton_cycles(4))
        assert not meets_each_class_at_most_once(Family(4, tuple(cycles)), perfect_matchings(4))

    def test_shape_pattern(self):
        cb = cover_upper_bound(6, PartitionShape((3, 3)))
        assert cb.universe_size == 10 and cb.stated == cb.double_counting


class TestIncompatible:
    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_against_direct_count(self, n):
        H = next(hamilton_cycles(n))
        direct = sum(1 for C in hamilton_cycles(n)
                     if oracles.union_max_degree(n, H.edges, C.edges) < 4)
        assert incompatible_count(H) == direct

    def test_rejects_non_cycle(self):
        with pytest.raises(ValueError):
            incompatible_count(make_graph(4, [(1, 2)]))


class TestPaths:
    def test_path_family_valid(self):
        rep = solve_universe("hamilton-cycles", 5, budget=30)
        fam, edge = path_families(5, rep.witness)
        assert verify_family(fam)
        assert all(P.edge_count == 4 for P in fam.members)
        assert len(fam) >= -(-2 * rep.value // 4)

    def test_explicit_edge(self):
        rep = solve_universe("hamilton-cycles", 5, budget=30)
        fam, edge = path_families(5, rep.witness, (1, 2))
        assert edge == (1, 2)
        assert len(fam) == sum(1 for C in rep.witness.members if C.has_edge(1, 2))

    @pytest.mark.parametrize("n", [4, 5])
    def test_sandwich(self, n):
        rep = theorem3_sandwich(n, budget=60)
        assert rep.lower_holds
        assert rep.cycles.status == rep.paths.status == "exact"

    def test_paths_n4_against_brute_force(self):
        brute = oracles.max_family_bruteforce(
            [frozenset(P.edges) for P in hamilton_paths(4)],
            lambda a, b: oracles.union_max_degree(4, a, b) >= 4)
        assert solve_universe("hamilton-paths", 4, budget=60).value == brute
