"""Vectorised evaluation over blocks of orientations of one graph.

Column ``i`` of every array describes orientation ``indices[i]`` of the
graph; vertex sets are int64 bitmasks, so graphs are limited to 62 vertices.
These kernels mirror the scalar procedures in ``domination`` and
``partition`` and are cross-checked against them in the test suite.
"""
from itertools import combinations

import numpy as np

MAX_BATCH_N = 62


def out_masks(G, indices):
    """(n, B) array of open out-neighbourhood masks for the given orientation indices."""
    if G.n > MAX_BATCH_N:
        raise ValueError(f"batch kernels need n <= {MAX_BATCH_N}")
    idx = np.asarray(indices, dtype=np.int64)
    m = G.m
    out = np.zeros((G.n, idx.shape[0]), dtype=np.int64)
    for j, (u, v) in enumerate(G.edge_list):
        b = (idx >> (m - 1 - j)) & 1
        out[u] |= (1 - b) << v
        out[v] |= b << u
    return out


def closed_reach(out, d):
    """Masks of vertices within directed distance d of each vertex (itself included)."""
    n = out.shape[0]
    reach = out | (np.int64(1) << np.arange(n, dtype=np.int64))[:, None]
    for _ in range(1, min(d, max(n - 1, 1))):
        grown = reach.copy()
        for v in range(n):
            for w in range(n):
                grown[v] |= np.where((reach[v] >> w) & 1, out[w], 0)
        if np.array_equal(grown, reach):
            break
        reach = grown
    return reach


def min_dds_sizes(out, r=1, d=1):
    """Exact minimum (r, d)-dominating set size for every column."""
    n, B = out.shape
    sizes = np.full(B, -1, dtype=np.int64)
    if n == 0:
        sizes[:] = 0
        return sizes
    reach = closed_reach(out, d)
    pending = np.arange(B)
    full = np.int64((1 << n) - 1)
    if r == 1:
        for k in range(1, n + 1):
            R = reach[:, pending]
            hit = np.zeros(pending.shape[0], dtype=bool)

            def rec(start, depth, acc):
                nonlocal hit
                if depth == k:
                    hit |= acc == full
                    return
                for v in range(start, n - (k - depth) + 1):
                    rec(v + 1, depth + 1, R[v] if acc is None else acc | R[v])

            rec(0, 0, None)
            sizes[pending[hit]] = k
            pending = pending[~hit]
            if pending.shape[0] == 0:
                break
        return sizes
    # dom[u]: vertices other than u within distance d of u
    dom = np.zeros_like(out)
    for w in range(n):
        for u in range(n):
            if u != w:
                dom[u] |= ((reach[w] >> u) & 1) << w
    for k in range(0, n + 1):
        hit = np.zeros(pending.shape[0], dtype=bool)
        D = dom[:, pending]
        for combo in combinations(range(n), k):
            S = 0
            for v in combo:
                S |= 1 << v
            ok = np.ones(pending.shape[0], dtype=bool)
            for u in range(n):
                if not S >> u & 1:
                    ok &= np.bitwise_count(D[u] & np.int64(S)) >= r
            hit |= ok
        sizes[pending[hit]] = k
        pending = pending[~hit]
        if pending.shape[0] == 0:
            break
    return sizes


def peel_sizes(out):
    """Size of the max-out-degree peeling dominating set for every column."""
    n, B = out.shape
    closed = out | (np.int64(1) << np.arange(n, dtype=np.int64))[:, None]
    rem = np.full(B, (1 << n) - 1, dtype=np.int64)
    size = np.zeros(B, dtype=np.int64)
    cols = np.arange(B)
    while True:
        active = rem != 0
        if not active.any():
            return size
        best_deg = np.full(B, -1, dtype=np.int64)
        best_v = np.zeros(B, dtype=np.int64)
        for v in range(n):
            alive = ((rem >> v) & 1).astype(bool)
            deg = np.where(alive, np.bitwise_count(out[v] & rem).astype(np.int64), -1)
            better = deg > best_deg
            best_deg = np.where(better, deg, best_deg)
            best_v = np.where(better, v, best_v)
        chosen = closed[best_v, cols]
        rem = np.where(active, rem & ~chosen, rem)
        size += active


def max_out_degrees(out):
    return np.bitwise_count(out).max(axis=0).astype(np.int64) if out.shape[0] else np.zeros(out.shape[1], np.int64)
