"""Exact classical invariants of small graphs, each returned with a witness."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import networkx as nx

from .errors import ResourceCapError
from .graph import Digraph, Graph, Orientation, iter_bits, mask_to_list

MAX_INDEPENDENCE_N = 64
MAX_CHROMATIC_N = 16
MAX_DOMINATION_N = 24


@dataclass(frozen=True)
class WitnessedValue:
    value: int
    witness: tuple


def _require(n, cap, what):
    if n > cap:
        raise ResourceCapError(f"{what} is exact only for n <= {cap} (got n={n})")


def _first_max_independent(adj, cand, floor=0):
    """Lexicographically least maximum independent subset of ``cand``.

    Include-first DFS over ascending vertices visits independent sets in
    lexicographic order, so the first set of the final maximum size wins.
    ``floor`` is a known achievable size used only to prune.
    """
    best_size = max(floor - 1, -1)
    best_mask = 0

    def rec(chosen, size, rest):
        nonlocal best_size, best_mask
        if not rest:
            if size > best_size:
                best_size, best_mask = size, chosen
            return
        if size + rest.bit_count() <= best_size:
            return
        low = rest & -rest
        v = low.bit_length() - 1
        rec(chosen | low, size + 1, rest & ~adj[v] & ~low)
        rec(chosen, size, rest & ~low)

    rec(0, 0, cand)
    return best_mask


def _greedy_independent_size(adj, cand):
    size = 0
    while cand:
        v = min(iter_bits(cand), key=lambda u: ((adj[u] & cand).bit_count(), u))
        cand &= ~adj[v] & ~(1 << v)
        size += 1
    return size


def max_independent_set(G: Graph, within: int | None = None) -> int:
    """Mask of the lexicographically least maximum independent set (inside ``within``)."""
    cand = (1 << G.n) - 1 if within is None else within
    return _first_max_independent(G.adj, cand, _greedy_independent_size(G.adj, cand))


def independence_number(G: Graph) -> WitnessedValue:
    _require(G.n, MAX_INDEPENDENCE_N, "independence_number")
    S = max_independent_set(G)
    return WitnessedValue(S.bit_count(), tuple(mask_to_list(S)))


def covering_number(G: Graph) -> WitnessedValue:
    alpha = independence_number(G)
    cover = sorted(set(range(G.n)) - set(alpha.witness))
    return WitnessedValue(len(cover), tuple(cover))


def matching_number(G: Graph) -> WitnessedValue:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edge_list)
    matching = nx.max_weight_matching(H, maxcardinality=True)
    edges = sorted((min(e), max(e)) for e in matching)
    return WitnessedValue(len(edges), tuple(edges))


def _k_coloring(G, k):
    n = G.n
    classes = [0] * k

    def rec(v, used):
        if v == n:
            return True
        for c in range(min(used + 1, k)):
            if not classes[c] & G.adj[v]:
                classes[c] |= 1 << v
                if rec(v + 1, max(used, c + 1)):
                    return True
                classes[c] &= ~(1 << v)
        return False

    return [c for c in classes if c] if rec(0, 0) else None


def _greedy_clique_size(G):
    best = 1 if G.n else 0
    for v in range(G.n):
        clique, cand = 1, G.adj[v]
        while cand:
            u = max(iter_bits(cand), key=lambda w: ((G.adj[w] & cand).bit_count(), -w))
            clique += 1
            cand &= G.adj[u]
        best = max(best, clique)
    return best


def chromatic_number(G: Graph) -> WitnessedValue:
    _require(G.n, MAX_CHROMATIC_N, "chromatic_number")
    if G.n == 0:
        return WitnessedValue(0, ())
    k = _greedy_clique_size(G)
    while True:
        classes = _k_coloring(G, k)
        if classes is not None:
            return WitnessedValue(k, tuple(tuple(mask_to_list(c)) for c in classes))
        k += 1


def smallest_cover(reach, n, forced=0, lower=0):
    """Lexicographically least minimum set S (containing ``forced``) whose
    ``reach`` masks jointly cover all n vertices.  Returns the mask of S."""
    full = (1 << n) - 1
    base = forced
    for v in iter_bits(forced):
        base |= reach[v]
    free = [v for v in range(n) if not forced >> v & 1]
    k0 = max(lower - forced.bit_count(), 0)
    for k in range(k0, len(free) + 1):
        for combo in combinations(free, k):
            cover = base
            for v in combo:
                cover |= reach[v]
            if cover == full:
                S = forced
                for v in combo:
                    S |= 1 << v
                return S
    raise AssertionError("the whole vertex set always covers")


def domination_number(G: Graph) -> WitnessedValue:
    _require(G.n, MAX_DOMINATION_N, "domination_number")
    closed = [G.adj[v] | 1 << v for v in range(G.n)]
    isolated = sum(1 << v for v in range(G.n) if not G.adj[v])
    S = smallest_cover(closed, G.n, forced=isolated)
    return WitnessedValue(S.bit_count(), tuple(mask_to_list(S)))


def caro_wei(G: Graph) -> Fraction:
    return sum((Fraction(1, d + 1) for d in G.degrees()), Fraction(0))


def find_induced_star(G: Graph, m: int):
    """First induced K_{1,m} as (centre, leaves), or None if G is K_{1,m}-free."""
    if m < 2:
        raise ValueError("K_{1,m}-freeness needs m >= 2")

    def first_independent(cand, need, chosen):
        if need == 0:
            return chosen
        if cand.bit_count() < need:
            return None
        low = cand & -cand
        v = low.bit_length() - 1
        hit = first_independent(cand & ~G.adj[v] & ~low, need - 1, chosen + [v])
        return hit if hit is not None else first_independent(cand & ~low, need, chosen)

    for centre in range(G.n):
        leaves = first_independent(G.adj[centre], m, [])
        if leaves is not None:
            return centre, tuple(leaves)
    return None


def is_k1m_free(G: Graph, m: int) -> bool:
    return find_induced_star(G, m) is None


def min_star_free_order(G: Graph) -> int:
    """Least m >= 3 for which G is K_{1,m}-free."""
    worst = max((max_independent_set(G, G.adj[v]).bit_count() for v in range(G.n)), default=0)
    return max(3, worst + 1)


def degeneracy_order(G: Graph) -> tuple[list[int], int]:
    """Min-degree removal order (ties to least id) and the degeneracy."""
    alive = (1 << G.n) - 1
    order, degen = [], 0
    while alive:
        v = min(iter_bits(alive), key=lambda u: ((G.adj[u] & alive).bit_count(), u))
        degen = max(degen, (G.adj[v] & alive).bit_count())
        order.append(v)
        alive &= ~(1 << v)
    return order, degen


def degeneracy(G: Graph) -> int:
    return degeneracy_order(G)[1]


def is_complement_d_degenerate(G: Graph, d: int) -> bool:
    return degeneracy(G.complement()) <= d


def _reduce_out_degrees(n, out, k):
    """Reverse directed paths until every out-degree is <= k; False if impossible.

    If the out-closed set reachable from an overloaded vertex holds no vertex
    below k, that set induces more than k edges per vertex, so no orientation
    meets the cap.
    """
    while True:
        over = next((v for v in range(n) if out[v].bit_count() > k), None)
        if over is None:
            return True
        parent = {over: None}
        queue = deque([over])
        target = None
        while queue and target is None:
            u = queue.popleft()
            for w in iter_bits(out[u]):
                if w not in parent:
                    parent[w] = u
                    if out[w].bit_count() < k:
                        target = w
                        break
                    queue.append(w)
        if target is None:
            return False
        w = target
        while parent[w] is not None:
            u = parent[w]
            out[u] &= ~(1 << w)
            out[w] |= 1 << u
            w = u


def min_max_outdegree(G: Graph) -> tuple[int, Orientation]:
    """Least achievable maximum out-degree over orientations of G, with an orientation attaining it."""
    lo, hi = 0, G.max_degree
    best = None
    while lo <= hi:
        k = (lo + hi) // 2
        out = [G.adj[u] >> (u + 1) << (u + 1) for u in range(G.n)]
        if _reduce_out_degrees(G.n, out, k):
            best = (k, out)
            hi = k - 1
        else:
            lo = k + 1
    k, out = best
    return k, Orientation.from_digraph(G, Digraph(G.n, tuple(out)))
