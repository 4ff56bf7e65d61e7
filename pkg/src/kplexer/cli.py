"""Command line interface.

Subcommands:
  solve   one (graph, k) instance, text/json/csv report
  params  n, m, degeneracy, community degeneracy, and gap values
  bench   manifest of instances, CSV/JSON table plus correlation summary

Exit codes: 0 solved (optimal or trivial), 2 timeout, 1 input/usage error.
The KPLEXER_TIME_LIMIT environment variable overrides the default time limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bench import (
    RunRecord,
    correlation_summary,
    detect_format,
    records_csv,
    run_instance,
    run_manifest,
)
from .graph import GraphFormatError, parse_graph
from .ordering import community_degeneracy_ordering, degeneracy_ordering
from .solver import SolverConfig, maple_solve

CD_SKIP_EDGES = 5_000_000


def _default_limit() -> float:
    env = os.environ.get("KPLEXER_TIME_LIMIT")
    if env:
        try:
            return float(env)
        except ValueError:
            pass
    return 1800.0


def _add_solver_flags(sp):
    sp.add_argument("--graph", required=True, help="input graph file")
    sp.add_argument("--strategy", choices=["vertex", "edge", "hybrid"], default="vertex")
    sp.add_argument("--time-limit", type=float, default=_default_limit(), metavar="SECONDS")
    sp.add_argument("--no-reduction", action="store_true",
                    help="disable second- and higher-order reduction rules")
    sp.add_argument("--no-dbdd-bound", action="store_true",
                    help="disable the partition bound in the dual search")
    sp.add_argument("--format", choices=["edge-list", "dimacs"], default=None,
                    help="input format (default: by extension)")
    sp.add_argument("--force-cd", action="store_true",
                    help="compute community degeneracy even on large graphs")


def _config(args) -> SolverConfig:
    return SolverConfig(
        strategy=args.strategy,
        reductions_enabled=not args.no_reduction,
        dbdd_bound_enabled=not args.no_dbdd_bound,
        time_limit=args.time_limit,
        force_cd=getattr(args, "force_cd", False),
    )


def cmd_solve(args) -> int:
    cfg = _config(args)
    rec, g, res = run_instance(args.graph, args.k, cfg, args.format, want_result=True)
    if rec.status == "error":
        print(f"error: {rec.error}", file=sys.stderr)
        return 1
    if args.output == "json":
        payload = json.loads(rec.to_json())
        if res is not None and res.witness is not None:
            payload["witness"] = [int(g.labels[v]) for v in res.witness]
        print(json.dumps(payload, sort_keys=True))
    elif args.output == "csv":
        print(records_csv([rec]), end="")
    else:
        print(f"graph      : {rec.graph} (n={rec.n}, m={rec.m})")
        print(f"k          : {rec.k}   strategy: {rec.strategy}")
        print(f"status     : {rec.status}")
        print(f"omega_k    : {rec.omega_k}")
        print(f"d / cd     : {rec.d} / {rec.cd}")
        print(f"g_k / cg_k : {rec.g_k} / {rec.cg_k}")
        print(f"elapsed_ms : {rec.elapsed_ms}")
        print(f"dbdd_nodes : {rec.dbdd_nodes}   gamma: {rec.gamma}")
    return 2 if rec.status == "timeout" else 0


def cmd_params(args) -> int:
    try:
        g = parse_graph(args.graph, args.format or detect_format(args.graph))
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    d = degeneracy_ordering(g).degeneracy
    cd = None
    if g.m <= CD_SKIP_EDGES or args.force_cd:
        cd = community_degeneracy_ordering(g).community_degeneracy
    print(f"n={g.n} m={g.m} d={d} cd={cd if cd is not None else 'skipped'}")
    ks = [int(t) for t in args.k.split(",")] if args.k else []
    for k in ks:
        if args.omega is not None:
            if len(ks) != 1:
                print("error: --omega needs exactly one --k value", file=sys.stderr)
                return 1
            omega = args.omega
        else:
            res = maple_solve(g, k, SolverConfig(time_limit=args.time_limit))
            if res.status == "timeout":
                print(f"k={k}: timeout")
                continue
            omega = res.omega_k
        g_k = d + k - omega
        cg_k = cd + 2 * k - omega if cd is not None else None
        print(f"k={k}: omega_k={omega} g_k={g_k} cg_k={cg_k}")
    return 0


def cmd_bench(args) -> int:
    cfg = SolverConfig(
        strategy=args.strategy,
        reductions_enabled=not args.no_reduction,
        dbdd_bound_enabled=not args.no_dbdd_bound,
        time_limit=args.time_limit,
    )
    try:
        records = run_manifest(args.manifest, cfg, jobs=args.jobs)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    summary = correlation_summary(records)
    if args.output == "json":
        print(json.dumps({"records": [json.loads(r.to_json()) for r in records],
                          "summary": summary}, sort_keys=True))
    else:
        print(records_csv(records), end="")
        print()
        for key, val in summary.items():
            print(f"# {key}: {val}")
    if args.out_file:
        with open(args.out_file, "w") as fh:
            fh.write(records_csv(records))
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="kplexer", description="exact maximum k-plex solver")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("solve", help="solve one instance")
    _add_solver_flags(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--output", choices=["text", "json", "csv"], default="text")

    pp = sub.add_parser("params", help="graph parameters and gaps")
    pp.add_argument("--graph", required=True)
    pp.add_argument("--k", default="", help="comma-separated k values")
    pp.add_argument("--omega", type=int, default=None, help="known omega_k override")
    pp.add_argument("--format", choices=["edge-list", "dimacs"], default=None)
    pp.add_argument("--force-cd", action="store_true")
    pp.add_argument("--time-limit", type=float, default=_default_limit())

    bp = sub.add_parser("bench", help="run a benchmark manifest")
    bp.add_argument("--manifest", required=True)
    bp.add_argument("--jobs", type=int, default=1)
    bp.add_argument("--strategy", choices=["vertex", "edge", "hybrid"], default="vertex")
    bp.add_argument("--time-limit", type=float, default=_default_limit())
    bp.add_argument("--no-reduction", action="store_true")
    bp.add_argument("--no-dbdd-bound", action="store_true")
    bp.add_argument("--output", choices=["csv", "json"], default="csv")
    bp.add_argument("--out-file", default=None, help="also write the CSV table here")

    args = ap.parse_args(argv)
    try:
        if args.cmd == "solve":
            if args.k < 1:
                print("error: --k must be >= 1", file=sys.stderr)
                return 1
            return cmd_solve(args)
        if args.cmd == "params":
            return cmd_params(args)
        return cmd_bench(args)
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
