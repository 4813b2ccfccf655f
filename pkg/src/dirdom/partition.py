"""Greedy partition engine: peel off large "good" parts while enough vertices
remain, finish with singletons, and compare the part count with the
integral bound ``t + integral_t^max(n,t) dx / f(x)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import ExtractorContractError, HypothesisError
from .graph import Digraph, Graph, mask_to_list, to_mask
from .invariants import degeneracy, independence_number, max_independent_set

QUAD_TOL = 1e-9
QUAD_MAX_INTERVALS = 10**6


def adaptive_simpson(f, a, b, tol=QUAD_TOL, max_intervals=QUAD_MAX_INTERVALS):
    if b <= a:
        return 0.0

    def simpson(lo, flo, hi, fhi):
        mid = (lo + hi) / 2
        fmid = f(mid)
        return mid, fmid, (hi - lo) / 6 * (flo + 4 * fmid + fhi)

    fa, fb = f(a), f(b)
    m, fm, whole = simpson(a, fa, b, fb)
    stack = [(a, fa, b, fb, m, fm, whole, tol)]
    total = 0.0
    intervals = 1
    while stack:
        lo, flo, hi, fhi, mid, fmid, est, eps = stack.pop()
        lm, flm, left = simpson(lo, flo, mid, fmid)
        rm, frm, right = simpson(mid, fmid, hi, fhi)
        delta = left + right - est
        if abs(delta) <= 15 * eps or intervals >= max_intervals:
            total += left + right + delta / 15
        else:
            intervals += 1
            stack.append((lo, flo, mid, fmid, lm, flm, left, eps / 2))
            stack.append((mid, fmid, hi, fhi, rm, frm, right, eps / 2))
    return total


def gpl_bound(t, f, n, antiderivative=None):
    """``t + integral_t^max(n,t) dx / f(x)``.

    Uses ``antiderivative`` (a primitive of 1/f) when given, adaptive
    Simpson quadrature otherwise.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    upper = max(n, t)
    if upper == t:
        return float(t)
    for k in range(33):
        x = t + (upper - t) * k / 32
        if not f(x) > 0:
            raise ValueError(f"f must be positive on [{t}, {upper}], got f({x}) = {f(x)}")
    if antiderivative is not None:
        return t + antiderivative(upper) - antiderivative(t)
    return t + adaptive_simpson(lambda x: 1.0 / f(x), float(t), float(upper))


@dataclass(frozen=True)
class Extractor:
    """Rule that cuts one large part out of an instance.

    ``extract(H)`` returns ``(part_mask, witness)`` in H's own labels; when
    H has at least ``t`` vertices the part must hold at least ceil(f(|V(H)|))
    of them.  ``check(H)`` raises HypothesisError for instances outside
    the class the guarantee covers.
    """

    name: str
    t: int
    f: Callable[[float], float]
    extract: Callable
    antiderivative: Callable[[float], float] | None = None
    check: Callable | None = None
    params: dict = field(default_factory=dict)

    def bound(self, n):
        return gpl_bound(self.t, self.f, n, self.antiderivative)


@dataclass(frozen=True)
class PartitionCertificate:
    parts: tuple[tuple[int, ...], ...]
    witnesses: tuple[dict, ...]
    bound: float
    extractor: str = ""

    @property
    def part_count(self):
        return len(self.parts)

    @property
    def within_bound(self):
        return self.part_count <= math.ceil(self.bound - 1e-9)

    def dominating_set(self):
        """Dominator of every part (singletons dominate themselves)."""
        return tuple(sorted(w.get("dominator", w.get("singleton")) for w in self.witnesses))

    def to_json(self):
        return {
            "extractor": self.extractor,
            "parts": [list(p) for p in self.parts],
            "witnesses": list(self.witnesses),
            "part_count": self.part_count,
            "bound": self.bound,
        }


def _ceil_guarantee(x):
    return math.ceil(x - 1e-9)


def greedy_partition(H, e: Extractor) -> PartitionCertificate:
    if e.check is not None:
        e.check(H)
    remaining = list(range(H.n))
    parts, witnesses = [], []
    while remaining and len(remaining) >= e.t:
        sub = H.induced(to_mask(remaining))
        part_mask, witness = e.extract(sub)
        local = mask_to_list(part_mask)
        if not local:
            raise ExtractorContractError(f"{e.name} returned an empty part")
        need = _ceil_guarantee(e.f(len(remaining)))
        if len(local) < need:
            raise ExtractorContractError(
                f"{e.name} returned {len(local)} vertices from {len(remaining)}, guarantee is {need}"
            )
        part = tuple(remaining[i] for i in local)
        witness = {k: remaining[v] if k == "dominator" else v for k, v in witness.items()}
        parts.append(part)
        witnesses.append(witness)
        taken = set(part)
        remaining = [v for v in remaining if v not in taken]
    for v in remaining:
        parts.append((v,))
        witnesses.append({"singleton": v})
    return PartitionCertificate(tuple(parts), tuple(witnesses), e.bound(H.n), e.name)


def validate_certificate(H, cert: PartitionCertificate) -> bool:
    """Parts partition V(H) and every witness checks out against H."""
    seen = sorted(v for p in cert.parts for v in p)
    if seen != list(range(H.n)):
        return False
    G = H.underlying() if isinstance(H, Digraph) else H
    for part, w in zip(cert.parts, cert.witnesses):
        mask = to_mask(part)
        if "singleton" in w:
            if part != (w["singleton"],):
                return False
        elif "dominator" in w:
            v = w["dominator"]
            if v not in part or mask & ~(H.out[v] | 1 << v):
                return False
        elif w.get("independent"):
            if any(G.adj[v] & mask for v in part):
                return False
        else:
            return False
    return True


def _underlying(H):
    return H.underlying() if isinstance(H, Digraph) else H


def _max_outdegree_vertex(D: Digraph) -> int:
    return max(range(D.n), key=lambda v: (D.out[v].bit_count(), -v))


def peel_dds(D: Digraph) -> tuple[int, ...]:
    """Dominating set from repeatedly taking a max-out-degree vertex (ties to
    least id) and deleting its closed out-neighbourhood."""
    alive = (1 << D.n) - 1
    chosen = []
    while alive:
        v = max(mask_to_list(alive), key=lambda u: ((D.out[u] & alive).bit_count(), -u))
        chosen.append(v)
        alive &= ~(D.out[v] | 1 << v)
    return tuple(sorted(chosen))


def independence_extractor() -> Extractor:
    """Parts are lexicographically least maximum independent sets (always >= 1 vertex)."""

    def extract(H):
        return max_independent_set(_underlying(H)), {"independent": True}

    return Extractor("independence", 2, lambda x: 1.0, extract, antiderivative=lambda x: x)


def _peel_extract(D):
    v = _max_outdegree_vertex(D)
    return D.out[v] | 1 << v, {"dominator": v}


def _require_oriented(H):
    if not isinstance(H, Digraph) or not H.is_oriented():
        raise HypothesisError("peeling extractors need an oriented digraph instance")


def outdegree_peel_extractor(alpha_cap: int) -> Extractor:
    """Closed out-neighbourhood of a max-out-degree vertex, for orientations of
    graphs with independence number at most ``alpha_cap``."""
    a = alpha_cap
    if a < 1:
        raise ValueError("alpha_cap must be >= 1")

    def check(H):
        _require_oriented(H)
        alpha = independence_number(H.underlying()).value
        if alpha > a:
            raise HypothesisError(f"independence number {alpha} exceeds alpha_cap={a}")

    return Extractor(
        "outdegree_peel",
        a,
        lambda x: (x - a) / (2 * a) + 1,
        _peel_extract,
        antiderivative=lambda x: 2 * a * math.log(x + a),
        check=check,
        params={"alpha_cap": a},
    )


def degenerate_peel_extractor(d: int) -> Extractor:
    """Same peeling rule, for orientations of graphs whose complement is d-degenerate."""
    if d < 1:
        raise ValueError("d must be >= 1")

    def check(H):
        _require_oriented(H)
        deg = degeneracy(H.underlying().complement())
        if deg > d:
            raise HypothesisError(f"complement has degeneracy {deg} > d={d}")

    return Extractor(
        "degenerate_peel",
        2 * d + 1,
        lambda x: (x - 1) / 2 - d + 1,
        _peel_extract,
        antiderivative=lambda x: 2 * math.log(x - 2 * d + 1),
        check=check,
        params={"d": d},
    )


def alpha_closed_form(alpha, n):
    """Integral bound of the independence-number peeling at order n >= alpha."""
    return alpha + 2 * alpha * math.log((n + alpha) / (2 * alpha))


EXTRACTORS = {
    "independence": lambda **kw: independence_extractor(),
    "outdegree": lambda alpha_cap, **kw: outdegree_peel_extractor(alpha_cap),
    "degenerate": lambda d, **kw: degenerate_peel_extractor(d),
}
