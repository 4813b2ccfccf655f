from fractions import Fraction

import pytest
from hypothesis import given, settings

from dirdom.bounds import faudree_alpha_upper
from dirdom.errors import ResourceCapError
from dirdom.graph import (
    Graph,
    all_graphs,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    star_graph,
)
from dirdom.invariants import (
    caro_wei,
    chromatic_number,
    covering_number,
    degeneracy,
    domination_number,
    find_induced_star,
    independence_number,
    is_complement_d_degenerate,
    is_k1m_free,
    matching_number,
    min_max_outdegree,
    min_star_free_order,
)
from dirdom.rng import SplitMix64
import oracles
from conftest import random_graph
from test_graph import graphs

C5 = cycle_graph(5)


@pytest.mark.parametrize(
    "G,expected", [(complete_graph(5), 1), (empty_graph(5), 5), (C5, 2)]
)
def test_alpha_examples(G, expected):
    assert independence_number(G).value == expected


def test_alpha_lexicographic_witness():
    assert independence_number(C5).witness == (0, 2)
    assert independence_number(path_graph(4)).witness == (0, 2)


@pytest.mark.parametrize("G,expected", [(empty_graph(4), 0), (complete_graph(4), 2), (C5, 2)])
def test_matching_examples(G, expected):
    assert matching_number(G).value == expected


@pytest.mark.parametrize("G,expected", [(complete_graph(6), 6), (C5, 3), (path_graph(4), 2), (empty_graph(0), 0)])
def test_chromatic_examples(G, expected):
    assert chromatic_number(G).value == expected


@pytest.mark.parametrize("G,expected", [(complete_graph(6), 1), (C5, 2), (empty_graph(4), 4)])
def test_domination_examples(G, expected):
    assert domination_number(G).value == expected


@pytest.mark.parametrize("G,expected", [(complete_graph(3), 2), (empty_graph(4), 0), (C5, 3)])
def test_covering_examples(G, expected):
    w = covering_number(G)
    assert w.value == expected
    assert all(u in w.witness or v in w.witness for u, v in G.edge_list)


@pytest.mark.parametrize("G,expected", [(complete_graph(3), 1), (empty_graph(4), 4), (C5, Fraction(5, 3))])
def test_caro_wei_examples(G, expected):
    assert caro_wei(G) == expected


def test_caps():
    with pytest.raises(ResourceCapError):
        chromatic_number(empty_graph(17))
    with pytest.raises(ResourceCapError):
        domination_number(empty_graph(25))
    with pytest.raises(ResourceCapError):
        independence_number(empty_graph(65))


def test_against_brute_force_all_graphs_n5():
    for G in all_graphs(5):
        a = independence_number(G)
        assert a.value == oracles.alpha(G)[0]
        assert a.witness == oracles.alpha(G)[1]
        assert matching_number(G).value == oracles.matching(G)
        assert chromatic_number(G).value == oracles.chromatic(G)
        assert domination_number(G).value == oracles.undirected_domination(G)


def test_witness_validity_random(rng):
    for _ in range(300):
        G = random_graph(rng, rng.randrange(11))
        a = independence_number(G)
        assert len(a.witness) == a.value and oracles.is_independent(G, a.witness)
        mt = matching_number(G)
        ends = [x for e in mt.witness for x in e]
        assert len(ends) == len(set(ends)) == 2 * mt.value
        assert all(G.has_edge(u, v) for u, v in mt.witness)
        ch = chromatic_number(G)
        assert len(ch.witness) == ch.value
        assert sorted(v for c in ch.witness for v in c) == list(range(G.n))
        assert all(oracles.is_independent(G, c) for c in ch.witness)
        dm = domination_number(G)
        covered = set(dm.witness)
        for v in dm.witness:
            covered |= set(G.neighbors(v))
        assert len(dm.witness) == dm.value and len(covered) == G.n


@settings(max_examples=300)
@given(graphs(max_n=9))
def test_gallai(G):
    assert independence_number(G).value + covering_number(G).value == G.n


def test_caro_wei_lower_bound_random():
    rng = SplitMix64(77)
    for _ in range(10_000):
        G = random_graph(rng, rng.randrange(1, 9))
        assert independence_number(G).value >= caro_wei(G)


class TestStars:
    def test_star_itself(self):
        assert not is_k1m_free(star_graph(3), 3)
        assert find_induced_star(star_graph(3), 3) == (0, (1, 2, 3))

    def test_complete_and_cycle(self):
        assert is_k1m_free(complete_graph(6), 3)
        assert is_k1m_free(C5, 3)

    def test_m_must_be_at_least_two(self):
        with pytest.raises(ValueError):
            is_k1m_free(C5, 1)

    def test_brute_force(self, rng):
        from itertools import combinations

        for _ in range(300):
            G = random_graph(rng, rng.randrange(1, 8))
            for m in (2, 3, 4):
                brute = any(
                    oracles.is_independent(G, L)
                    for c in range(G.n)
                    for L in combinations(G.neighbors(c), m)
                )
                assert is_k1m_free(G, m) == (not brute)

    def test_min_star_free_order(self):
        assert min_star_free_order(star_graph(5)) == 6
        assert min_star_free_order(C5) == 3


def test_faudree_on_star_free_graphs():
    rng = SplitMix64(3)
    checked = 0
    for _ in range(3000):
        G = random_graph(rng, rng.randrange(1, 10))
        for m in (3, 4, 5):
            if is_k1m_free(G, m):
                checked += 1
                assert independence_number(G).value <= faudree_alpha_upper(G.n, m, G.min_degree) + 1e-9
    assert checked > 1000


class TestDegeneracy:
    def test_trees(self):
        assert degeneracy(path_graph(7)) == 1
        assert degeneracy(star_graph(4)) == 1

    def test_complete(self):
        assert degeneracy(complete_graph(6)) == 5

    def test_complement_predicate(self):
        assert is_complement_d_degenerate(complete_graph(5), 0)
        assert not is_complement_d_degenerate(empty_graph(5), 3)
        assert is_complement_d_degenerate(empty_graph(5), 4)

    def test_definition_brute_force(self, rng):
        # degeneracy = max over induced subgraphs of their minimum degree
        for _ in range(100):
            G = random_graph(rng, rng.randrange(1, 8))
            best = max(G.induced(S).min_degree for S in range(1, 1 << G.n))
            assert degeneracy(G) == best


def test_key_lemma_edge_floor_exhaustive_n5():
    for G in all_graphs(5):
        a = independence_number(G).value
        for k in range(a, a + 3):
            for S in range(1, 1 << G.n):
                H = G.induced(S)
                if H.n >= k:
                    assert H.m >= H.n * (H.n - k) / (2 * k) - 1e-12


class TestMinMaxOutdegree:
    @pytest.mark.parametrize("n", [3, 4, 7])
    def test_cycles(self, n):
        assert min_max_outdegree(cycle_graph(n))[0] == 1

    def test_k3_k4(self):
        assert min_max_outdegree(complete_graph(3))[0] == 1
        assert min_max_outdegree(complete_graph(4))[0] == 2

    def test_edgeless(self):
        k, o = min_max_outdegree(empty_graph(3))
        assert k == 0 and o.index == 0

    def test_orientation_attains_value(self, rng):
        for _ in range(200):
            G = random_graph(rng, rng.randrange(1, 12))
            k, o = min_max_outdegree(G)
            assert o.graph == G and o.digraph.max_out_degree == k

    def test_brute_force_m_le_10(self):
        rng = SplitMix64(404)
        cases = 0
        while cases < 500:
            G = random_graph(rng, rng.randrange(1, 9))
            if G.m > 10:
                continue
            cases += 1
            assert min_max_outdegree(G)[0] == oracles.min_max_outdegree(G)
