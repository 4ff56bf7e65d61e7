#!/usr/bin/env python3
"""Compare the numba-compiled kernels against the interpreted fallback.

Each backend runs in a subprocess (the flag must be set before import):
KPLEXER_JIT=1 compiles the kernels, KPLEXER_JIT=0 interprets the same source.

Usage: python benchmarks/backend_bench.py [--rounds 5] [--n 30]
"""

import argparse
import json
import os
import subprocess
import sys

PAYLOAD = r"""
import json, time
from kplexer import gnp, maple_solve, SolverConfig, degeneracy_ordering
from kplexer._jit import USE_JIT

rounds = {rounds}
n = {n}
# warm-up triggers compilation on the jit path; not timed
for k in (1, 2, 3):
    maple_solve(gnp(12, 0.5, 1), k, SolverConfig(time_limit=600))

t0 = time.perf_counter()
total = 0
for seed in range(rounds):
    g = gnp(n, 0.5, seed)
    for k in (2, 3):
        res = maple_solve(g, k, SolverConfig(time_limit=600))
        total += res.omega_k
solve_s = time.perf_counter() - t0

t0 = time.perf_counter()
for seed in range(rounds * 20):
    degeneracy_ordering(gnp(200, 0.05, seed))
peel_s = time.perf_counter() - t0

print(json.dumps({{"jit": USE_JIT, "solve_s": solve_s, "peel_s": peel_s, "checksum": total}}))
"""


def run(jit: bool, rounds: int, n: int) -> dict:
    env = dict(os.environ, KPLEXER_JIT="1" if jit else "0")
    env["PYTHONPATH"] = os.path.join(os.path.dirname(__file__), "..", "src") + os.pathsep + env.get("PYTHONPATH", "")
    out = subprocess.run(
        [sys.executable, "-c", PAYLOAD.format(rounds=rounds, n=n)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rounds", type=int, default=5)
    ap.add_argument("--n", type=int, default=30)
    args = ap.parse_args()

    jit = run(True, args.rounds, args.n)
    py = run(False, args.rounds, args.n)
    assert jit["checksum"] == py["checksum"], "backends disagree"

    print(f"{'benchmark':<28}{'numba':>12}{'python':>12}{'speedup':>10}")
    for key, label in [("solve_s", f"maple_solve G({args.n},0.5)"), ("peel_s", "degeneracy peel G(200,.05)")]:
        sp = py[key] / max(jit[key], 1e-9)
        print(f"{label:<28}{jit[key]:>11.3f}s{py[key]:>11.3f}s{sp:>9.1f}x")


if __name__ == "__main__":
    main()
