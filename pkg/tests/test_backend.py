"""The interpreted fallback path must agree with the compiled path."""

import os
import subprocess
import sys

SNIPPET = """
from kplexer import gnp, maple_solve, SolverConfig
from kplexer._jit import USE_JIT
assert not USE_JIT
vals = []
for seed in (1, 2, 3):
    g = gnp(9, 0.5, seed)
    for k in (1, 2):
        vals.append(maple_solve(g, k, SolverConfig()).omega_k)
print(",".join(map(str, vals)))
"""


def test_pure_python_backend_matches():
    env = dict(os.environ, KPLEXER_JIT="0")
    env["PYTHONPATH"] = os.path.join(os.path.dirname(__file__), "..", "src") + os.pathsep + env.get("PYTHONPATH", "")
    out = subprocess.run([sys.executable, "-c", SNIPPET], env=env,
                         capture_output=True, text=True, timeout=300)
    assert out.returncode == 0, out.stderr
    got = [int(x) for x in out.stdout.strip().split(",")]

    from kplexer import gnp, maple_solve, SolverConfig

    want = []
    for seed in (1, 2, 3):
        g = gnp(9, 0.5, seed)
        for k in (1, 2):
            want.append(maple_solve(g, k, SolverConfig()).omega_k)
    assert got == want
