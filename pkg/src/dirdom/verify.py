"""Exhaustive and sampled verification of bound theorems over small graphs.

Universes are labelled graphs (edge subsets), not isomorphism classes.
Every check is a pure function of one graph and the config, so any
violation can be replayed from its graph6 string alone.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _batch
from .bounds import ReportOptions, bound_report, erdos_bounds, faudree_alpha_upper, main_upper, rdom_uppers
from .domination import DominationQuery, adversarial_orientation, is_dds, max_min_dds, min_dds, semi_kernel, stacked_dds
from .errors import ResourceCapError
from .graph import (
    DEFAULT_MAX_ORIENTATIONS,
    Graph,
    check_orientation_cap,
    complete_graph,
    graph_from_index,
    orientations,
    parse_graph6,
    random_gnp,
    to_mask,
)
from .invariants import (
    caro_wei,
    degeneracy,
    domination_number,
    independence_number,
    matching_number,
    min_max_outdegree,
    min_star_free_order,
)
from .rng import derive_seed

EXHAUSTIVE_ORIENTATION_N = 5
OVERRIDE_ORIENTATION_N = 6


@dataclass(frozen=True)
class VerifyConfig:
    n: int
    n_min: int | None = None
    samples: int | None = None
    seed: int = 0
    p: float = 0.5
    r: int = 2
    d: int = 2
    max_orientations: int | None = DEFAULT_MAX_ORIENTATIONS
    override: bool = False
    workers: int = 1


@dataclass
class VerificationReport:
    theorem: str
    universe: str
    checked: int
    violations: list[dict] = field(default_factory=list)
    elapsed: float = 0.0
    extras: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.violations

    def to_json(self, timing=False):
        out = {
            "theorem": self.theorem,
            "universe": self.universe,
            "checked": self.checked,
            "passed": self.passed,
            "violations": self.violations,
            "extras": self.extras,
        }
        if timing:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out


# ----------------------------------------------------------------------------
# per-graph checks: return (violation detail or None, statistic or None)


def _gamma(G, cfg, q=DominationQuery()):
    return max_min_dds(G, q, max_orientations=cfg.max_orientations)[0]


def check_chain(G, cfg):
    gam = domination_number(G).value
    alpha = independence_number(G).value
    Gd = _gamma(G, cfg)
    upper = G.n - matching_number(G).value
    if not gam <= alpha <= Gd <= upper:
        return f"chain broken: gamma={gam} alpha={alpha} Gamma_d={Gd} n-alpha'={upper}", Gd
    return None, Gd


def check_main(G, cfg):
    if G.n == 0:
        return None, None
    alpha = independence_number(G).value
    Gd = _gamma(G, cfg)
    bound = main_upper(G.n, alpha)
    if Gd > bound + 1e-9:
        return f"Gamma_d={Gd} > {bound:.6f} (alpha={alpha})", Gd
    return None, Gd


def check_peel(G, cfg):
    if G.n == 0:
        return None, None
    check_orientation_cap(G, cfg.max_orientations)
    bound = main_upper(G.n, independence_number(G).value)
    worst = 0
    step = 1 << 16
    for lo in range(0, 1 << G.m, step):
        idx = np.arange(lo, min(lo + step, 1 << G.m), dtype=np.int64)
        sizes = _batch.peel_sizes(_batch.out_masks(G, idx))
        pos = int(np.argmax(sizes))
        worst = max(worst, int(sizes[pos]))
        if sizes[pos] > bound + 1e-9:
            return f"peel size {int(sizes[pos])} > {bound:.6f} at orientation {int(idx[pos])}", worst
    return None, worst


def check_ng_upper(G, cfg):
    if G.n == 0:
        return None, None
    total = _gamma(G, cfg) + _gamma(G.complement(), cfg)
    bound = G.n + math.ceil(G.n / 2)
    if total > bound:
        return f"Gamma_d(G)+Gamma_d(complement)={total} > {bound}", total
    return None, total


def check_distance(G, cfg):
    if G.n == 0:
        return None, None
    alpha = independence_number(G).value
    got = _gamma(G, cfg, DominationQuery(d=cfg.d))
    if cfg.d >= 2 and got != alpha:
        return f"Gamma_d(G,{cfg.d})={got} != alpha={alpha}", got
    D = adversarial_orientation(G).digraph
    forced = min_dds(D, DominationQuery(d=cfg.d)).value
    if forced != alpha:
        return f"adversarial orientation gives {forced} != alpha={alpha} at d={cfg.d}", got
    return None, got


def check_rdom(G, cfg):
    if G.n == 0:
        return None, None
    alpha = independence_number(G).value
    got = _gamma(G, cfg, DominationQuery(r=cfg.r))
    complete_case, general = rdom_uppers(G.n, alpha, cfg.r)
    if got > general + 1e-9:
        return f"Gamma_d,{cfg.r}={got} > {general:.6f}", got
    if G.is_complete() and got > complete_case + 1e-9:
        return f"Gamma_d,{cfg.r}(K_n)={got} > {complete_case:.6f}", got
    return None, got


def check_bounds(G, cfg):
    opts = ReportOptions(r=cfg.r, d=cfg.d, max_orientations=cfg.max_orientations)
    rep = bound_report(G, opts)
    bad = rep.violations
    if bad:
        return "; ".join(f"{b.name}: observed {b.observed} vs {b.value}" for b in bad), None
    return None, None


def check_erdos(G, cfg):
    Gd = _gamma(G, cfg)
    if G.n >= 2:
        lo, hi = erdos_bounds(G.n)
        if not lo - 1e-9 <= Gd <= hi + 1e-9:
            return f"Gamma_d(K_{G.n})={Gd} outside [{lo:.6f}, {hi:.6f}]", Gd
    elif Gd > math.log2(G.n + 1):
        return f"Gamma_d(K_{G.n})={Gd} > log2(n+1)", Gd
    return None, Gd


def check_stacked(G, cfg):
    worst = 0
    for o in orientations(G, max_orientations=cfg.max_orientations):
        D = o.digraph
        for r in range(1, cfg.r + 1):
            S = stacked_dds(D, r)
            worst = max(worst, len(S))
            if not is_dds(D, S, DominationQuery(r=r)):
                return f"stacked set {S} is not {r}-dominating in orientation {o.index}", worst
            if len(S) > r * math.log2(G.n + 1) + 1e-9:
                return f"stacked size {len(S)} > {r}*log2(n+1) in orientation {o.index}", worst
    return None, worst


def check_semikernel(G, cfg):
    alpha = independence_number(G).value
    for o in orientations(G, max_orientations=cfg.max_orientations):
        D = o.digraph
        U = semi_kernel(D)
        mask = to_mask(U)
        if any((D.out[u] | D.inn[u]) & mask for u in U):
            return f"semi-kernel {U} not independent in orientation {o.index}", None
        if not is_dds(D, U, DominationQuery(d=2)):
            return f"semi-kernel {U} misses a vertex in orientation {o.index}", None
        if len(U) > alpha:
            return f"semi-kernel size {len(U)} > alpha={alpha}", None
    return None, None


def check_caro_wei(G, cfg):
    alpha = independence_number(G).value
    cw = caro_wei(G)
    if alpha < cw:
        return f"alpha={alpha} < Caro-Wei {cw}", None
    return None, None


def check_faudree(G, cfg):
    if G.n == 0:
        return None, None
    m = min_star_free_order(G)
    alpha = independence_number(G).value
    bound = faudree_alpha_upper(G.n, m, G.min_degree)
    if alpha > bound + 1e-9:
        return f"alpha={alpha} > {bound:.6f} for K_1,{m}-free graph", None
    return None, None


def _subsets(G, min_size):
    for S in range(1 << G.n):
        if S.bit_count() >= max(min_size, 1):
            yield S


def check_key_lemma(G, cfg):
    """Edge-count and out-degree floors for every induced subgraph and every k in {alpha, alpha+1}.

    The out-degree floor is checked against the least achievable maximum
    out-degree of H, which covers all orientations of H at once.
    """
    if G.n == 0:
        return None, None
    alpha = independence_number(G).value
    for k in (alpha, alpha + 1):
        for S in _subsets(G, k):
            H = G.induced(S)
            floor = H.n * (H.n - k) / (2 * k)
            if H.m < floor - 1e-9:
                return f"k={k}, H={S:b}: m_H={H.m} < {floor:.6f}", None
            kmin = min_max_outdegree(H)[0]
            if kmin < (H.n - k) / (2 * k) - 1e-9:
                return f"k={k}, H={S:b}: min max out-degree {kmin} < {(H.n - k) / (2 * k):.6f}", None
    return None, None


def check_degenerate_lemma(G, cfg):
    if G.n == 0:
        return None, None
    d = max(1, degeneracy(G.complement()))
    for S in _subsets(G, 1):
        H = G.induced(S)
        kmin = min_max_outdegree(H)[0]
        if not kmin > (H.n - 1) / 2 - d:
            return f"d={d}, H={S:b}: min max out-degree {kmin} <= {(H.n - 1) / 2 - d}", None
    return None, None


THEOREMS = {
    "chain": (check_chain, True, False),
    "main": (check_main, True, False),
    "peel": (check_peel, True, False),
    "ng_upper": (check_ng_upper, True, False),
    "distance": (check_distance, True, False),
    "rdom": (check_rdom, True, False),
    "bounds": (check_bounds, True, False),
    "erdos": (check_erdos, True, True),
    "stacked": (check_stacked, True, True),
    "semikernel": (check_semikernel, True, False),
    "caro_wei": (check_caro_wei, False, False),
    "faudree": (check_faudree, False, False),
    "key_lemma": (check_key_lemma, False, False),
    "degenerate_lemma": (check_degenerate_lemma, False, False),
}


# ----------------------------------------------------------------------------
# universes and driver


def _orders(cfg):
    lo = cfg.n if cfg.n_min is None else cfg.n_min
    return list(range(lo, cfg.n + 1))


def universe_items(theorem, cfg):
    """(order, index) pairs of the universe in canonical order."""
    _, _, complete_only = THEOREMS[theorem]
    items = []
    for n in _orders(cfg):
        if complete_only:
            items.append((n, -1))
        elif cfg.samples is not None:
            items.extend((n, i) for i in range(cfg.samples))
        else:
            items.extend((n, i) for i in range(1 << (n * (n - 1) // 2)))
    return items


def universe_graph(item, cfg) -> Graph:
    n, i = item
    if i < 0:
        return complete_graph(n)
    if cfg.samples is not None:
        return random_gnp(n, cfg.p, derive_seed(cfg.seed, n * 1_000_003 + i))
    return graph_from_index(n, i)


def describe_universe(theorem, cfg):
    orders = _orders(cfg)
    span = f"n={orders[0]}" if len(orders) == 1 else f"n={orders[0]}..{orders[-1]}"
    if THEOREMS[theorem][2]:
        return f"all orientations of K_n, {span}"
    if cfg.samples is not None:
        return f"{cfg.samples} random G(n,{cfg.p}) graphs per order, {span}, seed {cfg.seed}"
    return f"all labelled graphs, {span}"


def _guard(theorem, cfg):
    _, needs_orient, complete_only = THEOREMS[theorem]
    if not needs_orient or complete_only or cfg.samples is not None:
        return
    limit = OVERRIDE_ORIENTATION_N if cfg.override else EXHAUSTIVE_ORIENTATION_N
    if cfg.n > limit:
        hint = "" if cfg.override else " (pass the override flag to allow n=6)"
        raise ResourceCapError(f"exhaustive orientation sweep for {theorem} is capped at n <= {limit}{hint}")


def _run_chunk(args):
    theorem, cfg, items = args
    check = THEOREMS[theorem][0]
    out = []
    for item in items:
        G = universe_graph(item, cfg)
        detail, stat = check(G, cfg)
        out.append((item, G.to_graph6(), detail, stat))
    return out


def _split(items, parts):
    size = -(-len(items) // parts) if items else 0
    return [items[k:k + size] for k in range(0, len(items), size)] if size else []


def verify(theorem: str, cfg: VerifyConfig) -> VerificationReport:
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {sorted(THEOREMS)}")
    if cfg.workers < 1:
        raise ValueError("workers must be >= 1")
    _guard(theorem, cfg)
    start = time.perf_counter()
    items = universe_items(theorem, cfg)
    if cfg.workers == 1 or len(items) < 2:
        results = _run_chunk((theorem, cfg, items))
    else:
        chunks = _split(items, cfg.workers * 4)
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = [row for part in pool.map(_run_chunk, [(theorem, cfg, c) for c in chunks]) for row in part]
    report = VerificationReport(theorem, describe_universe(theorem, cfg), len(results))
    stats: dict[int, list] = {}
    for (n, i), g6, detail, stat in results:
        if detail is not None:
            report.violations.append({"graph6": g6, "n": n, "index": i, "detail": detail})
        if stat is not None:
            stats.setdefault(n, []).append(stat)
    report.extras = _summarise(theorem, stats)
    report.elapsed = time.perf_counter() - start
    return report


def _summarise(theorem, stats):
    if not stats:
        return {}
    if theorem == "ng_upper":
        return {
            "ndg_max": {str(n): max(v) for n, v in sorted(stats.items())},
            "ndg_min": {str(n): min(v) for n, v in sorted(stats.items())},
        }
    return {"max_statistic": {str(n): max(v) for n, v in sorted(stats.items())}}


def replay(theorem: str, graph6: str, cfg: VerifyConfig):
    """Re-run one check on a single graph; returns the violation detail or None."""
    return THEOREMS[theorem][0](parse_graph6(graph6), cfg)[0]
