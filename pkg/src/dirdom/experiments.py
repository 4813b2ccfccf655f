"""Seeded random-tournament sweeps and explicit Schütte-property witnesses."""
from __future__ import annotations

import math
from itertools import combinations

from .domination import MAX_GAMMA_N, min_dds
from .errors import OutOfScopeError, ResourceCapError
from .graph import Digraph, directed_cycle, qr_tournament_7, random_tournament
from .rng import derive_seed

CSV_HEADER = ("n", "sample_index", "seed", "gamma")


def tournament_sweep(n: int, samples: int, seed: int = 0, include_qr7: bool = False):
    """Exact minimum DDS size of ``samples`` seeded random tournaments on n vertices.

    Sample i uses tournament seed ``derive_seed(seed, i)``, so any row can be
    regenerated on its own.  Returns (rows, summary, violations) where a
    violation is a sample above log2(n+1).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if n > MAX_GAMMA_N:
        raise ResourceCapError(f"exact tournament domination is capped at n <= {MAX_GAMMA_N}")
    upper = math.log2(n + 1)
    rows = []
    for i in range(samples):
        s = derive_seed(seed, i)
        rows.append((n, i, s, min_dds(random_tournament(n, s)).value))
    if include_qr7:
        if n != 7:
            raise ValueError("the quadratic-residue witness has n = 7")
        rows.append((7, samples, "qr7", min_dds(qr_tournament_7()).value))
    gammas = [row[3] for row in rows]
    violations = [row for row in rows if row[3] > upper + 1e-9]
    summary = [
        ("min", min(gammas)),
        ("max", max(gammas)),
        ("mean", sum(gammas) / len(gammas)),
    ]
    for k in range(1, math.floor(upper) + 1):
        summary.append((f"frac_gamma_ge_{k}", sum(g >= k for g in gammas) / len(gammas)))
    summary.append(("erdos_upper", upper))
    summary.append(("violations", len(violations)))
    return rows, summary, violations


def format_csv(rows, summary):
    lines = [",".join(CSV_HEADER)]
    lines += [",".join(str(x) for x in row) for row in rows]
    lines += [f"# {key},{value}" for key, value in summary]
    return "\n".join(lines) + "\n"


def common_dominators(T: Digraph, S) -> list[int]:
    """Vertices outside S with an arc to every member of S."""
    return [u for u in range(T.n) if u not in S and all(T.has_arc(u, s) for s in S)]


def schuette_witness(k: int) -> dict:
    """Check the explicit tournament in which every k-set has a common dominator."""
    if k == 1:
        T, name = directed_cycle(3), "directed_triangle"
    elif k == 2:
        T, name = qr_tournament_7(), "qr7"
    else:
        raise OutOfScopeError(f"no explicit witness construction for k={k}; only k in {{1, 2}} is provided")
    trace = []
    for S in combinations(range(T.n), k):
        doms = common_dominators(T, S)
        trace.append({"set": list(S), "dominator": doms[0] if doms else None})
    dominated = sum(t["dominator"] is not None for t in trace)
    return {
        "k": k,
        "witness": name,
        "n": T.n,
        "arcs": [list(a) for a in T.arcs()],
        "checked_sets": len(trace),
        "dominated_sets": dominated,
        "passed": dominated == len(trace),
        "trace": trace,
    }
