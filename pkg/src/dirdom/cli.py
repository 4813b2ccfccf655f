"""Command-line driver: exact | bounds | verify | partition | tournament | schuette.

Exit codes: 0 pass, 1 violations found, 2 usage or parse error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

from .bounds import ReportOptions, bound_report, erdos_bounds, ng_bounds, rdom_uppers
from .domination import DominationQuery, min_dds
from .errors import GraphFormatError, HypothesisError, OutOfScopeError, ResourceCapError
from .experiments import format_csv, schuette_witness, tournament_sweep
from .graph import DEFAULT_MAX_ORIENTATIONS, Digraph, read_records
from .invariants import degeneracy, independence_number
from .partition import (
    degenerate_peel_extractor,
    greedy_partition,
    independence_extractor,
    outdegree_peel_extractor,
    validate_certificate,
)
from .verify import THEOREMS, VerifyConfig, verify

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _common(p, *, fmt=True):
    p.add_argument("--input", help="input file (default: stdin)")
    if fmt:
        p.add_argument("--format", choices=["graph6", "edgelist", "digraph"], default="graph6")
    p.add_argument("--output", help="output file (default: stdout)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--max-orientations", type=int, default=DEFAULT_MAX_ORIENTATIONS)
    p.add_argument("--workers", type=int, default=1)


def build_parser():
    parser = argparse.ArgumentParser(prog="dirdom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact invariants, orientation maxima and bound checks per input graph")
    _common(p)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--d", type=int, default=None)

    p = sub.add_parser("bounds", help="evaluate the bound catalog (per input graph, or for an order --n)")
    _common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int, default=2)

    p = sub.add_parser("verify", help="check a theorem over all (or sampled) labelled graphs")
    p.add_argument("theorem", choices=sorted(THEOREMS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n-min", type=int)
    p.add_argument("--samples", type=int, help="random graphs per order instead of the exhaustive universe")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--override", action="store_true", help="allow exhaustive orientation sweeps at n=6")
    p.add_argument("--timing", action="store_true", help="include elapsed time in JSON output")
    _common(p, fmt=False)

    p = sub.add_parser("partition", help="greedy partition certificates")
    p.add_argument("extractor", choices=["independence", "outdegree", "degenerate"])
    p.add_argument("--alpha", type=int, help="alpha cap for the outdegree extractor (default: computed)")
    p.add_argument("--d", type=int, help="degeneracy for the degenerate extractor (default: computed)")
    _common(p)

    p = sub.add_parser("tournament", help="seeded random-tournament domination sweep (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--include-qr7", action="store_true")
    p.add_argument("--output")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("schuette", help="verify the explicit Schütte witness for k in {1, 2}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--output")
    p.add_argument("--json", action="store_true")
    return parser


def _read_input(args):
    if args.input:
        with open(args.input) as fh:
            return fh.read()
    return sys.stdin.read()


def _emit(args, text):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_job(job):
    G, opts = job
    return bound_report(G, opts)


def _map(fn, jobs, workers):
    if workers <= 1 or len(jobs) < 2:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def _digraph_record(D, q):
    res = min_dds(D, q)
    return {"n": D.n, "arcs": [list(a) for a in D.arcs()], "r": q.r, "d": q.d,
            "gamma": res.value, "witness": list(res.witness)}


def cmd_exact(args, exact=True):
    records = list(read_records(_read_input(args), args.format))
    if args.format == "digraph":
        q = DominationQuery(r=args.r or 1, d=args.d or 1)
        out = [_digraph_record(D, q) for _, D in records]
        _emit(args, "".join(json.dumps(o) + "\n" for o in out))
        return EXIT_OK
    opts = ReportOptions(exact=exact, r=args.r or 2, d=getattr(args, "d", None) or 2,
                         max_orientations=args.max_orientations)
    reports = _map(_report_job, [(G, opts) for _, G in records], args.workers)
    lines = []
    for rep in reports:
        if args.json:
            lines.append(json.dumps(rep.to_json()))
        else:
            inv, ex = rep.invariants, rep.exact
            status = "violations=" + ",".join(b.name for b in rep.violations) if rep.violations else "ok"
            lines.append(
                f"{rep.graph6} n={rep.n} m={rep.m} alpha={inv['alpha']} alpha'={inv['alpha_prime']} "
                f"gamma={inv['gamma']} Gamma_d={ex['gamma_d']} {status}"
            )
    _emit(args, "".join(ln + "\n" for ln in lines))
    return EXIT_VIOLATION if any(rep.violations for rep in reports) else EXIT_OK


def cmd_bounds(args):
    if args.input is None and args.n is not None:
        n = args.n
        table = {"n": n}
        if n >= 2:
            table["erdos_lower"], table["erdos_upper"] = erdos_bounds(n)
            table["ng_lower_witness"], table["ng_upper"] = ng_bounds(n)
            table["rdom_complete"] = rdom_uppers(n, 1, args.r)[0]
        if args.json:
            _emit(args, json.dumps(table) + "\n")
        else:
            _emit(args, "".join(f"{k} {v}\n" for k, v in table.items()))
        return EXIT_OK
    args.d = None
    return cmd_exact(args, exact=False)


def cmd_verify(args):
    cfg = VerifyConfig(
        n=args.n, n_min=args.n_min, samples=args.samples, seed=args.seed, r=args.r, d=args.d,
        max_orientations=args.max_orientations, override=args.override, workers=args.workers,
    )
    rep = verify(args.theorem, cfg)
    if args.json:
        _emit(args, json.dumps(rep.to_json(timing=args.timing), indent=2) + "\n")
    else:
        lines = [f"{rep.theorem}: {'PASS' if rep.passed else 'FAIL'} checked={rep.checked} "
                 f"violations={len(rep.violations)} universe=\"{rep.universe}\""]
        lines += [f"  {v['graph6']}: {v['detail']}" for v in rep.violations]
        lines += [f"  {k}: {v}" for k, v in rep.extras.items()]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def _extractor_for(args, H):
    if args.extractor == "independence":
        return independence_extractor()
    if not isinstance(H, Digraph):
        raise HypothesisError("peeling extractors need digraph input (--format digraph)")
    G = H.underlying()
    if args.extractor == "outdegree":
        return outdegree_peel_extractor(args.alpha or max(1, independence_number(G).value))
    return degenerate_peel_extractor(args.d or max(1, degeneracy(G.complement())))


def cmd_partition(args):
    records = list(read_records(_read_input(args), args.format))
    lines, code = [], EXIT_OK
    for lineno, H in records:
        try:
            cert = greedy_partition(H, _extractor_for(args, H))
        except HypothesisError as exc:
            lines.append(json.dumps({"line": lineno, "error": f"hypothesis violated: {exc}"}) if args.json
                         else f"line {lineno}: hypothesis violated: {exc}")
            code = max(code, EXIT_USAGE)
            continue
        ok = cert.within_bound and validate_certificate(H, cert)
        if not ok:
            code = max(code, EXIT_VIOLATION)
        if args.json:
            lines.append(json.dumps({"line": lineno, **cert.to_json(), "valid": ok}))
        else:
            parts = " | ".join(" ".join(map(str, p)) for p in cert.parts)
            lines.append(f"line {lineno}: {cert.part_count} parts <= ceil({cert.bound:.6f}) "
                         f"{'ok' if ok else 'VIOLATION'}: {parts}")
    _emit(args, "".join(ln + "\n" for ln in lines))
    return code


def cmd_tournament(args):
    rows, summary, violations = tournament_sweep(args.n, args.samples, args.seed, args.include_qr7)
    if args.json:
        payload = {"rows": [dict(zip(("n", "sample_index", "seed", "gamma"), r)) for r in rows],
                   "summary": dict(summary)}
        _emit(args, json.dumps(payload) + "\n")
    else:
        _emit(args, format_csv(rows, summary))
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_schuette(args):
    rep = schuette_witness(args.k)
    if args.json:
        _emit(args, json.dumps(rep, indent=2) + "\n")
    else:
        lines = [f"k={rep['k']} witness={rep['witness']} n={rep['n']} "
                 f"{rep['dominated_sets']}/{rep['checked_sets']} sets dominated: {'PASS' if rep['passed'] else 'FAIL'}"]
        lines += [f"  {t['set']} <- {t['dominator']}" for t in rep["trace"]]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if rep["passed"] else EXIT_VIOLATION


COMMANDS = {
    "exact": cmd_exact,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "partition": cmd_partition,
    "tournament": cmd_tournament,
    "schuette": cmd_schuette,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphFormatError, OutOfScopeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
