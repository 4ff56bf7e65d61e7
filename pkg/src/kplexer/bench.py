"""Benchmark harness: manifest runs, per-run records, and correlation summary.

A manifest is a text file with one instance per line: a graph path followed by
the k values to run, e.g. ``data/hamming6-4.clq 2 5 10``. Blank lines and
'#' comments are skipped. Records serialize to JSON and to CSV with the fixed
column order in ``CSV_COLUMNS``; timings are integer milliseconds.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .graph import parse_graph
from .solver import SolverConfig, maple_solve

CSV_COLUMNS = [
    "graph", "n", "m", "k", "strategy", "reductions", "dbdd_bound", "status",
    "omega_k", "d", "cd", "g_k", "cg_k", "elapsed_ms", "dbdd_nodes", "gamma",
]


@dataclass
class RunRecord:
    graph: str
    n: int
    m: int
    k: int
    strategy: str
    reductions: bool
    dbdd_bound: bool
    status: str
    omega_k: int | None
    d: int | None
    cd: int | None
    g_k: int | None
    cg_k: int | None
    elapsed_ms: int
    dbdd_nodes: int
    gamma: float | None
    error: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunRecord":
        return cls(**json.loads(text))

    def csv_row(self) -> list:
        return [getattr(self, c) for c in CSV_COLUMNS]


def detect_format(path: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    return "dimacs" if ext in (".clq", ".dimacs", ".col") else "edge-list"


def record_of(name: str, g, k: int, cfg: SolverConfig, res) -> RunRecord:
    return RunRecord(
        graph=name, n=g.n, m=g.m, k=k, strategy=cfg.strategy,
        reductions=cfg.reductions_enabled, dbdd_bound=cfg.dbdd_bound_enabled,
        status=res.status, omega_k=res.omega_k, d=res.d, cd=res.cd,
        g_k=res.g_k, cg_k=res.cg_k,
        elapsed_ms=int(round(res.elapsed * 1000)),
        dbdd_nodes=res.stats.nodes,
        gamma=None if res.status == "timeout" else round(res.gamma, 4),
    )


def run_instance(path: str, k: int, cfg: SolverConfig, fmt: str | None = None,
                 want_result: bool = False):
    name = os.path.splitext(os.path.basename(path))[0]
    try:
        if not os.path.exists(path):
            raise FileNotFoundError(f"no such graph file: {path}")
        g = parse_graph(path, fmt or detect_format(path))
        res = maple_solve(g, k, cfg)
        rec = record_of(name, g, k, cfg, res)
        return (rec, g, res) if want_result else rec
    except Exception as exc:  # per-instance failures become rows, the run continues
        rec = RunRecord(
            graph=name, n=0, m=0, k=k, strategy=cfg.strategy,
            reductions=cfg.reductions_enabled, dbdd_bound=cfg.dbdd_bound_enabled,
            status="error", omega_k=None, d=None, cd=None, g_k=None, cg_k=None,
            elapsed_ms=0, dbdd_nodes=0, gamma=None, error=f"{type(exc).__name__}: {exc}",
        )
        return (rec, None, None) if want_result else rec


def parse_manifest(path: str) -> list[tuple[str, int]]:
    jobs = []
    base = os.path.dirname(os.path.abspath(path))
    with open(path) as fh:
        for ln, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split()
            if len(parts) < 2:
                raise ValueError(f"manifest line {ln}: expected 'path k [k ...]'")
            gpath = parts[0]
            if not os.path.isabs(gpath):
                gpath = os.path.join(base, gpath)
            for tok in parts[1:]:
                jobs.append((gpath, int(tok)))
    return jobs


def _worker(args):
    path, k, cfg_kw = args
    return run_instance(path, k, SolverConfig(**cfg_kw))


def run_manifest(path: str, cfg: SolverConfig, jobs: int = 1) -> list[RunRecord]:
    tasks = parse_manifest(path)
    cfg_kw = dict(strategy=cfg.strategy, reductions_enabled=cfg.reductions_enabled,
                  dbdd_bound_enabled=cfg.dbdd_bound_enabled, time_limit=cfg.time_limit,
                  collect_stats=cfg.collect_stats, force_cd=cfg.force_cd)
    if jobs <= 1:
        return [_worker((p, k, cfg_kw)) for p, k in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_worker, [(p, k, cfg_kw) for p, k in tasks]))


def pearson(xs: list[float], ys: list[float]) -> float | None:
    if len(xs) < 2:
        return None
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.std() == 0 or y.std() == 0:
        return None
    return float(np.corrcoef(x, y)[0, 1])


def correlation_summary(records: list[RunRecord]) -> dict:
    """Pearson correlation of log-runtime against size and gap parameters."""
    solved = [r for r in records if r.status in ("optimal", "trivial")]
    out = {"solved": len(solved), "total": len(records)}
    logt = [math.log10(max(r.elapsed_ms, 1)) for r in solved]
    for fieldname in ("n", "d", "cd", "g_k", "cg_k"):
        pairs = [(float(getattr(r, fieldname)), t)
                 for r, t in zip(solved, logt) if getattr(r, fieldname) is not None]
        out[f"pearson_log_time_vs_{fieldname}"] = pearson([p[0] for p in pairs],
                                                          [p[1] for p in pairs])
    return out


def write_csv(records: list[RunRecord], stream) -> None:
    w = csv.writer(stream)
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.csv_row())


def records_csv(records: list[RunRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()
