"""Command-line interface: classify, contains, count, tcut, increment,
cycles, ex, verify-suite.

Reports go to standard output (JSON by default, CSV or key=value text on
request), diagnostics to standard error. Identical arguments, seed, and
cache state produce byte-identical reports. Exit codes: 0 success, 1 domain
or precondition error, 2 budget exhaustion (partial results are still
emitted when they exist).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from . import classify as _classify
from .cache import CacheStore
from .count import count_copies, stepping_bound, supersat_bound
from .cycles import (
    cycle_driver,
    dense_or_balanced,
    embed_xmonotone_balanced,
    enumerate_cycles,
    is_r_balanced,
)
from .errors import BudgetError, PatexError
from .increment import _json_safe, run_driver
from .matrix import ZeroOneMatrix, find_embedding
from .ohypergraph import (
    avoidance_threshold,
    build_column_hypergraph,
    cut_probability,
    cut_cuts_edge,
    find_ordered_complete_t_partite,
    random_t_cut,
)
from .rng import DEFAULT_SEED, SplitMix64
from .search import brute_force_ex, deletion_lower_bound, exact_ex, extremal_table

CACHE_ENV = "PATTERN_EXTREMAL_CACHE"


def _load_matrix(path: str) -> ZeroOneMatrix:
    return ZeroOneMatrix.parse(Path(path).read_text())


def _emit(report: dict, fmt: str) -> None:
    report = _json_safe(report)
    if fmt == "json":
        print(json.dumps(report, sort_keys=True))
    elif fmt == "csv":
        flat = _flatten(report)
        print(",".join(str(k) for k, _ in flat))
        print(",".join(_csv_cell(v) for _, v in flat))
    else:
        for k, v in _flatten(report):
            print(f"{k} = {v}")


def _csv_cell(v) -> str:
    s = json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else str(v)
    if "," in s or '"' in s:
        s = '"' + s.replace('"', '""') + '"'
    return s


def _flatten(obj) -> list:
    def walk(o, pre):
        if isinstance(o, dict):
            for k in sorted(o):
                yield from walk(o[k], pre + [str(k)])
        else:
            yield ".".join(pre), o

    return list(walk(obj, []))


def _cache_store(args) -> Optional[CacheStore]:
    directory = args.cache_dir or os.environ.get(CACHE_ENV)
    return CacheStore(directory) if directory else None


# ----------------------------------------------------------------------
# Subcommands


def _cmd_classify(args) -> int:
    a = _load_matrix(args.pattern)
    prof = _classify.partite_profile(a)
    cyc = _classify.is_cycle(a)
    report = {
        "pattern": a.to_json_dict(),
        "weight": a.weight,
        "minColumnParts": {"count": prof.min_col_parts, "cuts": list(prof.col_cuts)},
        "minRowParts": {"count": prof.min_row_parts, "cuts": list(prof.row_cuts)},
        "profile": list(prof.profile),
        "isPermutation": _classify.is_permutation(a),
        "isAcyclic": _classify.is_acyclic(a),
        "isCycle": cyc,
        "isXMonotone": _classify.is_x_monotone(a) if cyc else None,
        "isPositiveCycle": _classify.is_positive_cycle(a) if cyc else None,
        "windingProfile": _classify.winding_profile(a).to_json_dict() if cyc else None,
    }
    _emit(report, args.format)
    return 0


def _cmd_contains(args) -> int:
    m = _load_matrix(args.host)
    a = _load_matrix(args.pattern)
    emb = find_embedding(m, a)
    report = {"contains": emb is not None}
    if emb is not None:
        report["embedding"] = emb.to_json_dict()
    _emit(report, args.format)
    return 0


def _cmd_count(args) -> int:
    m = _load_matrix(args.host)
    cc = count_copies(m, args.u, args.t)
    report = {"u": args.u, "t": args.t, "count": cc.count}
    if args.bounds:
        if m.rows == m.cols:
            report["supersatBound"] = supersat_bound(m.weight, m.rows, args.u, args.t).to_json_dict()
        else:
            report["supersatBound"] = None
        report["steppingBound"] = stepping_bound(cc.count, m.cols, args.u, args.t).to_json_dict()
    _emit(report, args.format)
    return 0


def _cmd_tcut(args) -> int:
    m = _load_matrix(args.host)
    graph, _ = build_column_hypergraph(m, args.t, 1)
    thr = avoidance_threshold(m.cols, args.t, args.s)
    parts = find_ordered_complete_t_partite(graph, args.s)
    rng = SplitMix64(args.seed)
    edges = sorted(graph.edges)[:5]
    mc = []
    for e in edges:
        exact = cut_probability(e, graph.n)
        hits = 0
        for _ in range(args.trials):
            if cut_cuts_edge(random_t_cut(graph.n, graph.t, rng), e):
                hits += 1
        p = float(exact)
        freq = hits / args.trials if args.trials else 0.0
        tol = 3.0 * (p * (1 - p) / args.trials) ** 0.5 if args.trials else 0.0
        mc.append(
            {
                "edge": list(e),
                "exact": f"{exact.numerator}/{exact.denominator}",
                "trials": args.trials,
                "hits": hits,
                "frequency": freq,
                "withinTolerance": abs(freq - p) <= tol,
            }
        )
    report = {
        "edgeCount": len(graph.edges),
        "threshold": thr.to_json_dict(),
        "foundParts": [list(part) for part in parts] if parts else None,
        "monteCarlo": mc,
        "seed": args.seed,
    }
    _emit(report, args.format)
    return 0


def _cmd_increment(args) -> int:
    m = _load_matrix(args.host)
    a = _load_matrix(args.pattern)
    trace = run_driver(
        m,
        a,
        args.mode,
        k=args.k,
        depth=args.depth,
        epsilon=args.epsilon,
        u=args.u,
        label_class_cap=args.cap,
    )
    doc = trace.to_json_dict()
    if args.format == "json":
        for level in doc["levels"]:
            print(json.dumps(level, sort_keys=True))
        summary = {k: v for k, v in doc.items() if k != "levels"}
        print(json.dumps(summary, sort_keys=True))
    else:
        _emit(doc, args.format)
    return 0


def _cmd_cycles(args) -> int:
    if args.cycles_cmd == "enumerate":
        mats = enumerate_cycles(args.length)
        report = {
            "length": args.length,
            "count": len(mats),
            "matrices": [m.to_json_dict() for m in mats],
        }
        _emit(report, args.format)
        return 0
    if args.cycles_cmd == "embed":
        m = _load_matrix(args.host)
        a = _load_matrix(args.pattern)
        r = args.r if args.r is not None else a.rows
        if r != a.rows:
            print(f"note: using pattern row count {a.rows} as the band count", file=sys.stderr)
            r = a.rows
        emb = embed_xmonotone_balanced(m, a)
        report = {"embedded": emb is not None, "r": r}
        if emb is not None:
            report["embedding"] = emb.to_json_dict()
            report["proper"] = True
        _emit(report, args.format)
        return 0
    if args.cycles_cmd == "dichotomy":
        m = _load_matrix(args.host)
        res = dense_or_balanced(m, args.r, args.s, args.k, args.c)
        report = {
            "branch": res.branch,
            "weight": res.weight,
            "preconditionHeld": res.weight_precondition_held,
            "invariantHolds": res.invariant_holds,
            "rows": list(res.row_indices),
            "cols": list(res.col_indices),
            "matrix": res.matrix.to_json_dict(),
            "details": res.details,
            "balanced": is_r_balanced(res.matrix, res.r) is not None
            if res.branch == "balanced"
            else None,
        }
        _emit(report, args.format)
        return 0
    if args.cycles_cmd == "drive":
        m = _load_matrix(args.host)
        a = _load_matrix(args.pattern)
        trace = cycle_driver(m, a, args.k, args.c, args.depth)
        doc = trace.to_json_dict()
        if args.format == "json":
            for level in doc["levels"]:
                print(json.dumps(level, sort_keys=True))
            summary = {k: v for k, v in doc.items() if k != "levels"}
            print(json.dumps(summary, sort_keys=True))
        else:
            _emit(doc, args.format)
        return 0
    raise PatexError(f"unknown cycles subcommand {args.cycles_cmd!r}")


def _cmd_ex(args) -> int:
    a = _load_matrix(args.pattern)
    cache = _cache_store(args)
    if args.n_to is not None:
        records = extremal_table(a, range(args.n, args.n_to + 1), args.budget, cache)
        if args.format == "csv":
            print("n,value,status,witness")
            for rec in records:
                print(f"{rec.n},{rec.value},{rec.status},{'|'.join(rec.witness.row_strings())}")
        else:
            _emit({"records": [rec.to_json_dict() for rec in records]}, args.format)
        return 0 if all(rec.status == "exact" for rec in records) else 2
    exit_code = 0
    if args.mode == "exact":
        record = brute_force_ex(args.n, a)
    elif args.mode == "bnb":
        record = cache.get(a, args.n) if cache else None
        if record is None or record.status != "exact":
            record = exact_ex(args.n, a, args.budget)
            if record.status != "exact":
                exit_code = 2
    else:
        record = deletion_lower_bound(args.n, a, args.seed)
    if cache is not None:
        record = cache.put(a, record)
    _emit(record.to_json_dict(), args.format)
    return exit_code


def _cmd_verify_suite(args) -> int:
    from .acceptance import run_suite

    results = run_suite(filter_substring=args.filter)
    return 0 if all(r.passed for r in results) else 1


# ----------------------------------------------------------------------
# Parser / dispatch


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patex",
        description="0-1 matrix pattern containment, classification, copy counting, "
        "density-increment engines, cycle geometry, and exact extremal numbers.",
    )
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--cache-dir", default=None, help=f"result cache (or ${CACHE_ENV})")
    parser.add_argument("--seed", type=lambda v: int(v, 0), default=DEFAULT_SEED)
    parser.add_argument("--budget", type=float, default=None, help="seconds")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="structural predicates of a pattern")
    p.add_argument("pattern")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("contains", help="containment with certificate")
    p.add_argument("host")
    p.add_argument("pattern")
    p.set_defaults(fn=_cmd_contains)

    p = sub.add_parser("count", help="exact K_{u,t} copy count")
    p.add_argument("host")
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--bounds", action="store_true")
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("tcut", help="column hypergraph, cut statistics, t-partite search")
    p.add_argument("host")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.set_defaults(fn=_cmd_tcut)

    p = sub.add_parser("increment", help="density-increment driver trace")
    p.add_argument("host")
    p.add_argument("pattern")
    p.add_argument("--mode", choices=("thm21", "thm12", "thm11"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--u", type=int, default=None)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--cap", type=int, default=10_000, help="label classes examined per step")
    p.set_defaults(fn=_cmd_increment)

    p = sub.add_parser("cycles", help="cycle enumeration, balanced embedding, dichotomy")
    csub = p.add_subparsers(dest="cycles_cmd", required=True)
    q = csub.add_parser("enumerate")
    q.add_argument("--length", type=int, required=True)
    q.set_defaults(fn=_cmd_cycles)
    q = csub.add_parser("embed")
    q.add_argument("host")
    q.add_argument("pattern")
    q.add_argument("--r", type=int, default=None)
    q.set_defaults(fn=_cmd_cycles)
    q = csub.add_parser("dichotomy")
    q.add_argument("host")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--c", type=float, required=True)
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--s", type=int, required=True)
    q.set_defaults(fn=_cmd_cycles)
    q = csub.add_parser("drive")
    q.add_argument("host")
    q.add_argument("pattern")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--c", type=float, required=True)
    q.add_argument("--depth", type=int, default=None)
    q.set_defaults(fn=_cmd_cycles)

    p = sub.add_parser("ex", help="extremal number at one size (or a table up to --n-to)")
    p.add_argument("pattern")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n-to", type=int, default=None, help="emit the table for n..n-to")
    p.add_argument("--mode", choices=("exact", "bnb", "random"), default="bnb")
    p.set_defaults(fn=_cmd_ex)

    p = sub.add_parser("verify-suite", help="run the acceptance checks")
    p.add_argument("--filter", default=None)
    p.set_defaults(fn=_cmd_verify_suite)

    return parser


def dispatch(argv) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints usage itself; --help exits 0
        return 0 if exc.code == 0 else 1
    try:
        return args.fn(args)
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return 2
    except PatexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
