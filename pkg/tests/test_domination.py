import math

import numpy as np
import pytest

from dirdom import _batch
from dirdom.domination import (
    DominationQuery,
    adversarial_orientation,
    is_dds,
    max_min_dds,
    max_min_dds_sampled,
    merge_maxima,
    min_dds,
    semi_kernel,
    stacked_dds,
)
from dirdom.errors import ResourceCapError
from dirdom.graph import (
    Digraph,
    all_graphs,
    arcless_digraph,
    complete_graph,
    cycle_graph,
    directed_cycle,
    empty_graph,
    orientations,
    petersen_graph,
    prefix_range,
    qr_tournament_7,
    random_digraph,
    random_orientation,
    random_tournament,
    transitive_tournament,
)
from dirdom.invariants import independence_number, matching_number
from dirdom.partition import peel_dds
from dirdom.rng import SplitMix64
import oracles
from conftest import random_graph

Q = DominationQuery


def test_query_validation():
    with pytest.raises(ValueError):
        Q(r=0)
    with pytest.raises(ValueError):
        Q(d=0)


class TestIsDDS:
    def test_three_cycle(self):
        assert is_dds(directed_cycle(3), {0, 1})

    def test_whole_vertex_set(self, rng):
        for _ in range(50):
            D = random_digraph(rng.randrange(1, 8), 0.3, rng.next_u64())
            assert is_dds(D, set(range(D.n)), Q(r=3, d=2))

    def test_distance(self):
        assert not is_dds(directed_cycle(5), {0}, Q(d=2))
        assert is_dds(directed_cycle(5), {0}, Q(d=4))

    def test_multiplicity(self):
        D = Digraph.from_arcs(3, [(0, 2), (1, 2)])
        assert is_dds(D, {0, 1}, Q(r=2))
        assert not is_dds(D, {0, 1}, Q(r=3))

    def test_matches_oracle(self, rng):
        for _ in range(300):
            D = random_digraph(rng.randrange(1, 7), rng.random(), rng.next_u64())
            S = {v for v in range(D.n) if rng.bit()}
            for q in (Q(), Q(r=2), Q(d=2), Q(r=2, d=3)):
                assert is_dds(D, S, q) == oracles.dominates(oracles.arcs_of(D), D.n, S, q.r, q.d)


class TestMinDDS:
    def test_three_cycle(self):
        assert min_dds(directed_cycle(3)).value == 2

    def test_transitive(self):
        res = min_dds(transitive_tournament(3))
        assert res.value == 1 and res.witness == (0,)

    def test_double_domination_three_cycle(self):
        assert min_dds(directed_cycle(3), Q(r=2)).value == 3

    def test_distance_five_cycle(self):
        assert min_dds(directed_cycle(5), Q(d=2)).value == 2

    def test_qr7(self):
        assert min_dds(qr_tournament_7()).value == 3

    def test_empty(self):
        assert min_dds(arcless_digraph(0)).value == 0

    def test_cap(self):
        with pytest.raises(ResourceCapError):
            min_dds(arcless_digraph(25))

    def test_matches_brute_force_with_witness(self):
        rng = SplitMix64(11)
        for _ in range(300):
            D = random_digraph(rng.randrange(1, 8), rng.random() * 0.6, rng.next_u64(), oriented=bool(rng.bit()))
            for q in (Q(), Q(r=2), Q(d=2), Q(r=2, d=2)):
                res = min_dds(D, q)
                assert (res.value, res.witness) == oracles.directed_gamma(D, q.r, q.d)
                assert is_dds(D, res.witness, q)

    def test_monotone_in_d_and_r(self):
        rng = SplitMix64(12)
        for _ in range(200):
            D = random_digraph(rng.randrange(1, 9), rng.random() * 0.5, rng.next_u64())
            by_d = [min_dds(D, Q(d=d)).value for d in range(1, 5)]
            by_r = [min_dds(D, Q(r=r)).value for r in range(1, 4)]
            assert by_d == sorted(by_d, reverse=True)
            assert by_r == sorted(by_r)


class TestMaxOverOrientations:
    def test_empty(self):
        assert max_min_dds(empty_graph(4))[0] == 4

    def test_k3(self):
        v, o = max_min_dds(complete_graph(3))
        assert v == 2 and min_dds(o.digraph).value == 2

    def test_c4(self):
        assert max_min_dds(cycle_graph(4))[0] == 2

    def test_c5(self):
        assert max_min_dds(cycle_graph(5))[0] == 3

    def test_first_maximiser_in_stream_order(self):
        G = cycle_graph(5)
        values = [min_dds(o.digraph).value for o in orientations(G)]
        v, o = max_min_dds(G)
        assert v == max(values) and o.index == values.index(v)

    def test_matches_oracle(self, rng):
        for _ in range(60):
            G = random_graph(rng, rng.randrange(1, 6))
            for q in (Q(), Q(r=2), Q(d=2)):
                assert max_min_dds(G, q)[0] == oracles.max_over_orientations(G, q.r, q.d)

    def test_batch_kernel_matches_scalar(self, rng):
        for _ in range(40):
            G = random_graph(rng, rng.randrange(1, 8))
            idx = np.array([rng.getrandbits(G.m) if G.m else 0 for _ in range(30)], dtype=np.int64)
            out = _batch.out_masks(G, idx)
            from dirdom.graph import Orientation
            digraphs = [Orientation(G, int(i)).digraph for i in idx]
            assert [tuple(int(x) for x in out[:, c]) for c in range(len(idx))] == [D.out for D in digraphs]
            for q in (Q(), Q(r=2), Q(d=2), Q(d=3), Q(r=2, d=2)):
                sizes = _batch.min_dds_sizes(out, q.r, q.d)
                assert list(sizes) == [min_dds(D, q).value for D in digraphs]
            assert list(_batch.peel_sizes(out)) == [len(peel_dds(D)) for D in digraphs]
            assert list(_batch.max_out_degrees(out)) == [D.max_out_degree for D in digraphs]

    def test_prefix_split_merge_equals_serial(self):
        G = cycle_graph(6)
        serial = max_min_dds(G)
        for k in range(1, 4):
            parts = []
            for p in range(1 << k):
                prefix = tuple(p >> (k - 1 - j) & 1 for j in range(k))
                parts.append(max_min_dds(G, index_range=prefix_range(G.m, prefix)))
            assert merge_maxima(parts) == serial

    def test_cap(self):
        with pytest.raises(ResourceCapError, match="sampling"):
            max_min_dds(complete_graph(8))


class TestSampled:
    def test_single_sample(self):
        G = cycle_graph(6)
        res = max_min_dds_sampled(G, samples=1, seed=9)
        o = random_orientation(G, SplitMix64(9))
        assert res.orientation == o and res.lower_bound == min_dds(o.digraph).value

    def test_lower_bound(self, rng):
        for _ in range(20):
            G = random_graph(rng, rng.randrange(1, 7))
            assert max_min_dds_sampled(G, samples=20, seed=rng.next_u64()).lower_bound <= max_min_dds(G)[0]

    def test_petersen(self):
        P = petersen_graph()
        est = max_min_dds_sampled(P, samples=1000, seed=1).lower_bound
        assert 1 <= est <= P.n - matching_number(P).value == 5

    def test_samples_positive(self):
        with pytest.raises(ValueError):
            max_min_dds_sampled(cycle_graph(4), samples=0)


class TestStacked:
    def test_single_stage(self, rng):
        for _ in range(50):
            D = random_tournament(rng.randrange(1, 8), rng.next_u64())
            assert stacked_dds(D, 1) == min_dds(D).witness

    def test_five_cycle(self):
        assert stacked_dds(directed_cycle(5), 2) == (0, 1, 2, 3, 4)

    def test_stage_replay(self):
        D = directed_cycle(5)
        first = min_dds(D).witness
        rest = [v for v in range(5) if v not in first]
        second = [rest[i] for i in min_dds(D.induced(set(rest))).witness]
        assert stacked_dds(D, 2) == tuple(sorted(first + tuple(second)))

    def test_is_r_dominating(self, rng):
        for _ in range(200):
            D = random_digraph(rng.randrange(1, 9), rng.random() * 0.7, rng.next_u64())
            for r in (1, 2, 3):
                assert is_dds(D, stacked_dds(D, r), Q(r=r))

    def test_ceil_bound_tournaments_n7_sample(self):
        rng = SplitMix64(70)
        tours = [random_tournament(7, rng.next_u64()) for _ in range(1500)] + [qr_tournament_7()]
        for T in tours:
            for r in (1, 2, 3):
                assert len(stacked_dds(T, r)) <= r * math.ceil(math.log2(8))


class TestSemiKernel:
    def test_arcless(self):
        assert semi_kernel(arcless_digraph(4)) == (0, 1, 2, 3)

    def test_transitive(self):
        assert semi_kernel(transitive_tournament(3)) == (0,)

    def test_five_cycle(self):
        assert semi_kernel(directed_cycle(5)) == (2, 4)

    def test_properties(self):
        rng = SplitMix64(31)
        for _ in range(2000):
            D = random_digraph(rng.randrange(1, 11), rng.random(), rng.next_u64(), oriented=bool(rng.bit()))
            U = semi_kernel(D)
            assert all(not D.has_arc(u, w) for u in U for w in U)
            assert is_dds(D, U, Q(d=2))
            assert len(U) <= independence_number(D.underlying()).value


class TestAdversarial:
    def test_complete(self):
        o = adversarial_orientation(complete_graph(5))
        assert o.digraph.out[0] == 0b11110 and min_dds(o.digraph).value == 1

    def test_c5(self):
        D = adversarial_orientation(cycle_graph(5)).digraph
        assert D.in_degree(0) == 0 and D.in_degree(2) == 0
        assert min_dds(D).value == 2

    def test_empty(self):
        D = adversarial_orientation(empty_graph(4)).digraph
        assert D.num_arcs == 0 and min_dds(D).value == 4

    def test_sources_and_forcing(self, rng):
        for _ in range(200):
            G = random_graph(rng, rng.randrange(1, 9))
            alpha = independence_number(G)
            D = adversarial_orientation(G).digraph
            assert all(D.in_degree(v) == 0 for v in alpha.witness)
            for d in (1, 2, 3):
                assert min_dds(D, Q(d=d)).value == alpha.value


def test_distance_equality_exhaustive_n5():
    for G in all_graphs(5):
        a = independence_number(G).value
        for d in (2, 3, 4):
            assert max_min_dds(G, Q(d=d))[0] == a


def test_chain_exhaustive_small():
    from dirdom.invariants import domination_number

    for n in range(1, 5):
        for G in all_graphs(n):
            gd = max_min_dds(G)[0]
            assert domination_number(G).value <= independence_number(G).value <= gd <= n - matching_number(G).value


def test_tournaments_below_log_bound():
    for n in range(1, 8):
        assert max_min_dds(complete_graph(n))[0] <= math.log2(n + 1)


def test_key_lemma_out_degree_sampled(rng):
    for _ in range(2000):
        G = random_graph(rng, rng.randrange(1, 10))
        k = independence_number(G).value + rng.randrange(2)
        S = sum(1 << v for v in range(G.n) if rng.bit())
        H_D = random_orientation(G, rng).digraph.induced(S)
        if H_D.n >= k:
            assert H_D.max_out_degree >= (H_D.n - k) / (2 * k)


def test_chain_random_n6():
    from dirdom.verify import VerifyConfig, verify

    rep = verify("chain", VerifyConfig(n=6, samples=1000, seed=6))
    assert rep.checked == 1000 and rep.passed
