"""Closed-form bounds on directed domination and a per-graph report that
evaluates every applicable one against exactly computed values.

``log2`` and ``ln`` are used exactly where the source formulas use base-2
and natural logarithms respectively.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .domination import DominationQuery, max_min_dds
from .errors import ResourceCapError
from .graph import DEFAULT_MAX_ORIENTATIONS, Graph
from .invariants import (
    chromatic_number,
    degeneracy,
    domination_number,
    independence_number,
    is_k1m_free,
    matching_number,
    min_star_free_order,
)


def _need(cond, msg):
    if not cond:
        raise ValueError(msg)


def erdos_bounds(n):
    """(lower, upper) for the largest minimum DDS over tournaments on n vertices."""
    _need(n >= 2, "erdos_bounds needs n >= 2")
    lg = math.log2(n)
    return lg - 2 * math.log2(lg), math.log2(n + 1)


def main_upper(n, alpha):
    _need(1 <= alpha <= n, "main_upper needs 1 <= alpha <= n")
    return alpha * (1 + 2 * math.log(n / alpha))


def cor_chi_upper(alpha, chi):
    _need(alpha >= 1 and chi >= 1, "cor_chi_upper needs alpha >= 1 and chi >= 1")
    return alpha * (1 + 2 * math.log(chi))


def cor_avg_upper(alpha, avg_degree):
    _need(alpha >= 1 and avg_degree >= 0, "cor_avg_upper needs alpha >= 1 and avg_degree >= 0")
    return alpha * (1 + 2 * math.log(avg_degree + 1))


def degen_upper(n, d):
    _need(d >= 0 and n >= 2 * d + 1, "degen_upper needs n >= 2d + 1")
    return 2 * d + 1 + 2 * math.log((n - 2 * d + 1) / 2)


def k1m_upper(n, m, delta):
    """Strict upper bound for K_{1,m}-free graphs of minimum degree delta (natural log)."""
    _need(m >= 3 and delta >= 0, "k1m_upper needs m >= 3 and delta >= 0")
    s = delta + m - 1
    return 2 * (m - 1) * n * math.log(s) / s


def clawfree_upper(n, delta):
    _need(delta >= 0, "clawfree_upper needs delta >= 0")
    return 4 * n * math.log2(delta + 2) / (delta + 2)


def arnautov_upper(n, delta):
    """Upper bound on the (undirected) domination number."""
    _need(delta >= 0, "arnautov_upper needs delta >= 0")
    return n * (math.log2(delta + 1) + 1) / (delta + 1)


def faudree_alpha_upper(n, m, delta):
    """Upper bound on the independence number of a K_{1,m}-free graph."""
    _need(m >= 3 and delta >= 0, "faudree_alpha_upper needs m >= 3 and delta >= 0")
    return (m - 1) * n / (delta + m - 1)


def ng_bounds(n):
    """(lower witness, upper) for max over G of the sum for G and its complement."""
    _need(n >= 2, "ng_bounds needs n >= 2")
    lg = math.log2(n)
    return n + lg - 2 * math.log2(lg), n + math.ceil(n / 2)


def rdom_uppers(n, alpha, r):
    """(complete-graph bound, general bound) for r-fold directed domination."""
    _need(r >= 1, "rdom_uppers needs r >= 1")
    _need(1 <= alpha <= n, "rdom_uppers needs 1 <= alpha <= n")
    return r * math.log2(n + 1), r * main_upper(n, alpha)


# ----------------------------------------------------------------------------
# report

_REL = {
    "<=": lambda obs, val: obs <= val + 1e-9,
    "<": lambda obs, val: obs < val - 1e-12,
    ">=": lambda obs, val: obs >= val - 1e-9,
    "==": lambda obs, val: obs == val,
}


@dataclass
class BoundEntry:
    name: str
    target: str
    relation: str
    applicable: bool
    value: float | None
    observed: float | None = None
    satisfied: bool | None = None

    def to_json(self):
        return {
            "name": self.name,
            "target": self.target,
            "relation": self.relation,
            "applicable": self.applicable,
            "value": self.value,
            "observed": self.observed,
            "satisfied": "unknown" if self.satisfied is None else self.satisfied,
        }


@dataclass
class ReportOptions:
    exact: bool = True
    r: int = 2
    d: int = 2
    complement: bool = True
    max_orientations: int | None = DEFAULT_MAX_ORIENTATIONS


@dataclass
class BoundReport:
    graph6: str
    n: int
    m: int
    invariants: dict
    exact: dict
    bounds: list[BoundEntry] = field(default_factory=list)

    @property
    def violations(self):
        return [b for b in self.bounds if b.satisfied is False]

    def entry(self, name):
        return next(b for b in self.bounds if b.name == name)

    def to_json(self):
        return {
            "graph": {"graph6": self.graph6, "n": self.n, "m": self.m},
            "invariants": self.invariants,
            "exact": self.exact,
            "bounds": [b.to_json() for b in self.bounds],
        }


def _capped(fn, *args):
    try:
        return fn(*args)
    except ResourceCapError:
        return None


def _exact_max(G, q, opts):
    if not opts.exact:
        return None
    try:
        return max_min_dds(G, q, max_orientations=opts.max_orientations)[0]
    except ResourceCapError:
        return None


def bound_report(G: Graph, options: ReportOptions | None = None) -> BoundReport:
    opts = options or ReportOptions()
    n, m = G.n, G.m
    alpha_w = _capped(independence_number, G)
    alpha = alpha_w.value if alpha_w else None
    matching = matching_number(G).value
    chi_w = _capped(chromatic_number, G)
    gam_w = _capped(domination_number, G)
    delta = G.min_degree
    inv = {
        "n": n,
        "m": m,
        "alpha": alpha,
        "alpha_prime": matching,
        "chi": chi_w.value if chi_w else None,
        "gamma": gam_w.value if gam_w else None,
        "delta": delta,
        "Delta": G.max_degree,
        "d_av": G.average_degree,
        "degeneracy": degeneracy(G),
    }
    Gd = _exact_max(G, DominationQuery(), opts)
    Gdr = _exact_max(G, DominationQuery(r=opts.r), opts)
    Gdist = _exact_max(G, DominationQuery(d=opts.d), opts) if opts.d >= 2 else None
    Gd_bar = _exact_max(G.complement(), DominationQuery(), opts) if opts.complement else None
    exact = {
        "gamma_d": Gd,
        "gamma_dr": Gdr,
        "r": opts.r,
        "gamma_d_dist": Gdist,
        "d": opts.d,
        "gamma_d_complement": Gd_bar,
    }
    rep = BoundReport(G.to_graph6(), n, m, inv, exact)
    positive = n >= 1 and alpha is not None

    def add(name, target, relation, applicable, value_fn, observed):
        value = value_fn() if applicable else None
        entry = BoundEntry(name, target, relation, applicable, value, observed)
        if applicable and observed is not None:
            entry.satisfied = _REL[relation](observed, value)
        rep.bounds.append(entry)

    gam = inv["gamma"]
    add("chain_gamma_le_alpha", "gamma", "<=", positive, lambda: alpha, gam)
    add("chain_alpha_le_Gamma_d", "Gamma_d", ">=", positive, lambda: alpha, Gd)
    add("chain_Gamma_d_le_n_minus_matching", "Gamma_d", "<=", n >= 1, lambda: n - matching, Gd)
    complete = n >= 2 and G.is_complete()
    add("erdos_lower", "Gamma_d", ">=", complete, lambda: erdos_bounds(n)[0], Gd)
    add("erdos_upper", "Gamma_d", "<=", complete, lambda: erdos_bounds(n)[1], Gd)
    add("main_upper", "Gamma_d", "<=", positive, lambda: main_upper(n, alpha), Gd)
    add("cor_chi_upper", "Gamma_d", "<=", positive and inv["chi"] is not None,
        lambda: cor_chi_upper(alpha, inv["chi"]), Gd)
    add("cor_avg_upper", "Gamma_d", "<=", positive, lambda: cor_avg_upper(alpha, G.average_degree), Gd)
    d_bar = max(1, degeneracy(G.complement()))
    add("degen_upper", "Gamma_d", "<=", n >= 2 * d_bar + 1, lambda: degen_upper(n, d_bar), Gd)
    star_m = min_star_free_order(G) if n else 3
    add("k1m_upper", "Gamma_d", "<", n >= 1, lambda: k1m_upper(n, star_m, delta), Gd)
    add("clawfree_upper", "Gamma_d", "<=", n >= 1 and is_k1m_free(G, 3), lambda: clawfree_upper(n, delta), Gd)
    add("arnautov_upper", "gamma", "<=", n >= 1, lambda: arnautov_upper(n, delta), gam)
    add("faudree_alpha_upper", "alpha", "<=", n >= 1, lambda: faudree_alpha_upper(n, star_m, delta), alpha)
    ng_obs = Gd + Gd_bar if Gd is not None and Gd_bar is not None else None
    add("ng_upper", "Gamma_d+Gamma_d_complement", "<=", n >= 2, lambda: ng_bounds(n)[1], ng_obs)
    add("rdom_complete", "Gamma_dr", "<=", complete, lambda: rdom_uppers(n, alpha, opts.r)[0], Gdr)
    add("rdom_general", "Gamma_dr", "<=", positive, lambda: rdom_uppers(n, alpha, opts.r)[1], Gdr)
    add("distance_equality", "Gamma_d_dist", "==", positive and opts.d >= 2, lambda: alpha, Gdist)
    return rep
