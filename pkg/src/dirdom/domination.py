"""Exact directed domination: minimum (r, d)-dominating sets of digraphs,
their maximum over orientations of a graph, and the constructive
procedures around them (stacked dominating sets, semi-kernels, and the
orientation that forces a maximum independent set into every dominating set).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _batch
from .errors import ResourceCapError
from .graph import (
    DEFAULT_MAX_ORIENTATIONS,
    Digraph,
    Graph,
    Orientation,
    check_orientation_cap,
    iter_bits,
    mask_to_list,
    random_orientation,
    to_mask,
)
from .invariants import max_independent_set, smallest_cover
from .rng import SplitMix64

MAX_GAMMA_N = 24
BATCH_SIZE = 1 << 16


@dataclass(frozen=True)
class DominationQuery:
    """Multiplicity ``r`` and distance radius ``d``; (1, 1) is plain directed domination.

    With both r > 1 and d > 1, every vertex outside S needs r members of S
    within directed distance d.
    """

    r: int = 1
    d: int = 1

    def __post_init__(self):
        if self.r < 1 or self.d < 1:
            raise ValueError(f"query needs r >= 1 and d >= 1, got r={self.r}, d={self.d}")


PLAIN = DominationQuery()


@dataclass(frozen=True)
class DirectedDominationResult:
    value: int
    witness: tuple[int, ...]
    query: DominationQuery


@dataclass(frozen=True)
class SampledDomination:
    """Largest minimum-DDS size seen over random orientations.

    Only a lower bound on the maximum over all orientations.
    """

    lower_bound: int
    orientation: Orientation
    samples: int
    seed: int
    query: DominationQuery


def is_dds(D: Digraph, S, q: DominationQuery = PLAIN) -> bool:
    """Whether S is a directed (r, d)-dominating set of D.

    Distances are taken by BFS from each member of S, independent of the
    reach-mask machinery used by the solvers.
    """
    members = sorted(S) if not isinstance(S, int) else mask_to_list(S)
    Sset = set(members)
    if any(not 0 <= v < D.n for v in Sset):
        raise ValueError("S must be a subset of the vertex set")
    hits = [0] * D.n
    for s in Sset:
        dist = D.distances_from(s)
        for u, du in enumerate(dist):
            if du is not None and 1 <= du <= q.d:
                hits[u] += 1
    return all(hits[u] >= q.r for u in range(D.n) if u not in Sset)


def _dominators(D: Digraph, d: int) -> list[int]:
    """``dom[u]``: vertices other than u within directed distance d of u."""
    reach = D.reach_masks(d)
    dom = [0] * D.n
    for w, R in enumerate(reach):
        for u in iter_bits(R & ~(1 << w)):
            dom[u] |= 1 << w
    return dom


def _greedy_cover_size(reach, n):
    left = (1 << n) - 1
    size = 0
    while left:
        v = max(range(n), key=lambda w: ((reach[w] & left).bit_count(), -w))
        left &= ~reach[v]
        size += 1
    return size


def min_dds(D: Digraph, q: DominationQuery = PLAIN) -> DirectedDominationResult:
    """Minimum directed (r, d)-dominating set with the lexicographically least witness.

    Vertices that cannot be dominated often enough are forced into S; the
    remaining candidates are scanned by increasing cardinality between a
    counting lower bound and a greedy upper bound.
    """
    n = D.n
    if n > MAX_GAMMA_N:
        raise ResourceCapError(f"exact directed domination is capped at n <= {MAX_GAMMA_N} (got n={n})")
    if n == 0:
        return DirectedDominationResult(0, (), q)
    dom = _dominators(D, q.d)
    forced = to_mask(u for u in range(n) if dom[u].bit_count() < q.r)
    if q.r == 1:
        reach = D.reach_masks(q.d)
        lower = -(-n // max(R.bit_count() for R in reach))
        upper = _greedy_cover_size(reach, n)
        S = smallest_cover(reach, n, forced=forced, lower=lower)
        assert S.bit_count() <= upper
        return DirectedDominationResult(S.bit_count(), tuple(mask_to_list(S)), q)
    free = [v for v in range(n) if not forced >> v & 1]
    for k in range(len(free) + 1):
        for combo in combinations(free, k):
            S = forced | to_mask(combo)
            if all((dom[u] & S).bit_count() >= q.r for u in free if not S >> u & 1):
                return DirectedDominationResult(S.bit_count(), tuple(mask_to_list(S)), q)
    raise AssertionError("the whole vertex set is always dominating")


def max_min_dds(
    G: Graph,
    q: DominationQuery = PLAIN,
    max_orientations: int | None = DEFAULT_MAX_ORIENTATIONS,
    index_range: range | None = None,
) -> tuple[int, Orientation]:
    """Maximum over orientations of G of the minimum DDS size.

    Returns the value and the first orientation in stream order attaining
    it.  ``index_range`` restricts the scan to part of the stream; results
    of disjoint parts combine with ``merge_maxima``.
    """
    check_orientation_cap(G, max_orientations)
    rng_ = index_range if index_range is not None else range(1 << G.m)
    best_val, best_idx = -1, None
    for lo in range(rng_.start, rng_.stop, BATCH_SIZE):
        idx = np.arange(lo, min(lo + BATCH_SIZE, rng_.stop), dtype=np.int64)
        sizes = _batch.min_dds_sizes(_batch.out_masks(G, idx), q.r, q.d)
        pos = int(np.argmax(sizes))
        if sizes[pos] > best_val:
            best_val, best_idx = int(sizes[pos]), int(idx[pos])
    if best_idx is None:
        raise ValueError("empty orientation range")
    return best_val, Orientation(G, best_idx)


def merge_maxima(parts):
    """Combine (value, orientation) results of disjoint stream blocks exactly as a serial scan would."""
    return max(parts, key=lambda vo: (vo[0], -vo[1].index))


def max_min_dds_sampled(G: Graph, q: DominationQuery = PLAIN, samples: int = 1000, seed: int = 0) -> SampledDomination:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = SplitMix64(seed)
    best, best_or = -1, None
    for _ in range(samples):
        o = random_orientation(G, rng)
        value = min_dds(o.digraph, q).value
        if value > best:
            best, best_or = value, o
    return SampledDomination(best, best_or, samples, seed, q)


def stacked_dds(D: Digraph, r: int) -> tuple[int, ...]:
    """Union of r successive minimum DDSs, each taken in what the previous ones left.

    Every vertex outside the union survived all r stages, so it picked up
    an in-neighbour from each of the r disjoint stages.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    remaining = list(range(D.n))
    union: list[int] = []
    for _ in range(r):
        if not remaining:
            break
        sub = D.induced(to_mask(remaining))
        stage = [remaining[i] for i in min_dds(sub).witness]
        union.extend(stage)
        taken = set(stage)
        remaining = [v for v in remaining if v not in taken]
    return tuple(sorted(union))


def semi_kernel(D: Digraph) -> tuple[int, ...]:
    """Independent set reaching every other vertex within two arcs.

    Pivot on the least remaining vertex v, solve D - N+[v], then add v unless
    the sub-solution already has an arc into v.
    """
    alive = (1 << D.n) - 1
    pivots = []
    while alive:
        v = (alive & -alive).bit_length() - 1
        pivots.append(v)
        alive &= ~(D.out[v] | 1 << v)
    Q = 0
    for v in reversed(pivots):
        if not D.inn[v] & Q:
            Q |= 1 << v
    return tuple(mask_to_list(Q))


def adversarial_orientation(G: Graph) -> Orientation:
    """Orientation in which a maximum independent set S has no in-arcs.

    Edges between S and the rest leave S; all other edges go from lower to
    higher id.  Every distance dominating set must then contain S.
    """
    S = max_independent_set(G)
    out = [0] * G.n
    for u, v in G.edge_list:
        if S >> v & 1:
            out[v] |= 1 << u
        else:
            out[u] |= 1 << v
    return Orientation.from_digraph(G, Digraph(G.n, tuple(out)))
