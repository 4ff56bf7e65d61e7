"""Acceptance suite: the six gate criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the printed lines.
The published-optimum rows use a 1800 s limit per run; the suite as a whole
can take well over an hour because of the hardest instances.
"""

import math
import time

import numpy as np
import pytest

from conftest import get_instance, random_graphs
from kplexer import (
    DbddInstance,
    SearchStats,
    SolverConfig,
    brute_force_max_kplex,
    brute_force_min_dbdd,
    community_degeneracy_ordering,
    complement,
    degeneracy_ordering,
    dbdd_solve,
    gnp,
    is_kplex,
    maple_solve,
    reduce_subproblem,
)
from kplexer.graph import Subproblem

TIME_LIMIT = 1800.0

# gamma observations collected across criteria 1 and 3 for criterion 6
_gammas: list[tuple[str, int, float, int]] = []

# (instance, k) -> published optimum, with the solver strategy used here.
# Strategy choice only affects speed; all strategies are answer-equivalent.
PUBLISHED_ROWS = [
    ("hamming6-4", 2, 6, "vertex"),
    ("hamming6-4", 5, 12, "vertex"),
    ("hamming6-4", 10, 20, "vertex"),
    ("hamming6-4", 15, 30, "vertex"),
    ("hamming6-4", 20, 38, "vertex"),
    ("johnson8-4-4", 2, 14, "vertex"),
    ("johnson8-4-4", 5, 28, "edge"),
    ("johnson8-4-4", 15, 60, "edge"),
    ("johnson8-4-4", 20, 70, "vertex"),
    ("c-fat500-2", 2, 26, "vertex"),
    ("c-fat500-2", 15, 39, "vertex"),
    ("MANN_a27", 5, 351, "vertex"),
    ("MANN_a27", 15, 378, "vertex"),
    ("C125.9", 15, 112, "edge"),
    ("C125.9", 20, 122, "vertex"),
]

_published_results: dict = {}


def _suite():
    return random_graphs(300)


def test_criterion_1_oracle_equivalence():
    t0 = time.time()
    graphs = _suite()
    checked = 0
    for i, g in enumerate(graphs):
        for k in (1, 2, 3, 4):
            want, _ = brute_force_max_kplex(g, k)
            res = maple_solve(g, k)
            assert res.omega_k == want, f"graph #{i} k={k}: got {res.omega_k}, oracle {want}"
            assert (res.status == "trivial") == (want < 2 * k - 1), f"graph #{i} k={k} status"
            assert res.witness.size == want and is_kplex(g, res.witness, k)
            _gammas.append(("random", k, res.gamma, res.stats.max_fanout))
            checked += 1
    elapsed = time.time() - t0
    print(f"\nCRITERION 1 PASS: {checked} maple-vs-oracle runs on {len(graphs)} graphs, "
          f"exact match, {elapsed:.1f}s")
    assert elapsed < 120.0, f"criterion 1 budget exceeded: {elapsed:.1f}s"


def test_criterion_2_dbdd_correctness():
    t0 = time.time()
    rng = np.random.default_rng(20240901)
    checked = 0
    i = 0
    while checked < 500:
        n = 4 + i % 9  # 4..12
        g = gnp(n, (0.2, 0.5, 0.8)[i % 3], 31337 + i)
        d = int(rng.integers(0, 4))
        t = int(rng.integers(0, 6))
        csize = int(rng.integers(0, g.n + 1))
        cand = np.sort(rng.choice(g.n, size=csize, replace=False))
        want = brute_force_min_dbdd(g, d, cand)
        feasible = want is not None and want <= t
        for bound in (True, False):
            got = dbdd_solve(DbddInstance(g, d=d, t=t, candidates=cand), bound_enabled=bound)
            assert (got is not None) == feasible, f"instance #{i} d={d} t={t} bound={bound}"
            if got is not None:
                assert len(got) <= t and set(got) <= set(int(x) for x in cand)
        checked += 1
        i += 1
    elapsed = time.time() - t0
    print(f"\nCRITERION 2 PASS: {checked} random dual instances match exhaustive search "
          f"(both bound settings), {elapsed:.1f}s")
    assert elapsed < 60.0, f"criterion 2 budget exceeded: {elapsed:.1f}s"


@pytest.mark.parametrize("name,k,expected,strategy", PUBLISHED_ROWS,
                         ids=[f"{n}-k{k}" for n, k, _, _ in PUBLISHED_ROWS])
def test_criterion_3_published_optima(name, k, expected, strategy):
    g = get_instance(name)
    if g is None:
        pytest.fail(
            f"{name}.clq is not available: this instance is a fixed random draw whose "
            f"generator seed was never published, it cannot be rebuilt from its "
            f"definition, and this environment has no network access to fetch it. "
            f"Place the original DIMACS file at data/{name}.clq to run this row."
        )
    res = maple_solve(g, k, SolverConfig(strategy=strategy, time_limit=TIME_LIMIT))
    _published_results[(name, k)] = res
    if res.status != "timeout":
        _gammas.append((name, k, res.gamma, res.stats.max_fanout))
    line = (f"CRITERION 3 [{name} k={k}] status={res.status} omega={res.omega_k} "
            f"expected={expected} elapsed={res.elapsed:.1f}s")
    print("\n" + line)
    assert res.status != "timeout", line
    assert res.omega_k == expected, line
    assert is_kplex(g, res.witness, k)


def test_criterion_4_parameter_reproduction():
    lines = []
    m = get_instance("MANN_a27")
    d = degeneracy_ordering(m).degeneracy
    cd = community_degeneracy_ordering(m).community_degeneracy
    assert (d, cd) == (364, 350), f"MANN_a27 d/cd: got {(d, cd)}, want (364, 350)"
    lines.append(f"MANN_a27 d/cd = {d}/{cd}")
    # gap identities on every reproduced row, against independently recomputed d/cd
    for (name, k), res in _published_results.items():
        if res.status == "timeout":
            continue
        g = get_instance(name)
        d2 = degeneracy_ordering(g).degeneracy
        assert res.d == d2
        assert res.g_k == d2 + k - res.omega_k and res.g_k >= 0
        if res.cd is not None:
            cd2 = community_degeneracy_ordering(g).community_degeneracy
            assert res.cd == cd2
            assert res.cg_k == cd2 + 2 * k - res.omega_k and res.cg_k >= 0
    lines.append(f"gap identities on {len(_published_results)} reproduced rows")
    c = get_instance("C125.9")
    if c is None:
        print("\nCRITERION 4 PARTIAL: " + "; ".join(lines))
        pytest.fail(
            "C125.9.clq unavailable (unpublished random seed, no network); "
            "d/cd = 102/84 cannot be checked. " + "; ".join(lines)
        )
    dc = degeneracy_ordering(c).degeneracy
    cdc = community_degeneracy_ordering(c).community_degeneracy
    assert (dc, cdc) == (102, 84), f"C125.9 d/cd: got {(dc, cdc)}"
    lines.append(f"C125.9 d/cd = {dc}/{cdc}")
    print("\nCRITERION 4 PASS: " + "; ".join(lines))


def test_criterion_5_structural_invariants():
    t0 = time.time()
    # corpus graphs: degeneracy sandwich
    for name in ("hamming6-4", "johnson8-4-4", "c-fat500-2", "MANN_a27"):
        g = get_instance(name)
        d = degeneracy_ordering(g).degeneracy
        cd = community_degeneracy_ordering(g).community_degeneracy
        assert cd + 1 <= d <= math.sqrt(g.n + 2 * g.m), name
    suite = _suite()
    for g in suite:
        if g.m >= 1:
            d = degeneracy_ordering(g).degeneracy
            cd = community_degeneracy_ordering(g).community_degeneracy
            assert cd + 1 <= d <= math.sqrt(g.n + 2 * g.m)
    # duality spot-check on the n <= 12 part of the suite
    dual_checked = 0
    for g in suite:
        if g.n <= 12:
            for k in (1, 2, 3):
                size, _ = brute_force_max_kplex(g, k)
                assert size == g.n - brute_force_min_dbdd(complement(g), k - 1, range(g.n))
                dual_checked += 1
    # complement involution
    for g in suite[:60]:
        cc = complement(complement(g))
        assert np.array_equal(cc.indices, g.indices) and np.array_equal(cc.indptr, g.indptr)
    # reduction idempotence
    for i, g in enumerate(suite[:60]):
        anchor = np.array([i % g.n], dtype=np.int32)
        cand = np.array(sorted(set(range(g.n)) - {i % g.n}), dtype=np.int32)
        sub = Subproblem(g, anchor, cand, p=max(3, g.n // 2), k=2)
        once = reduce_subproblem(sub)
        if once.graph.n:
            twice = reduce_subproblem(once)
            assert (twice.graph.n, twice.graph.m) == (once.graph.n, once.graph.m)
    # strategy and ablation answer-equivalence across the full random suite
    configs = [SolverConfig(strategy="vertex"), SolverConfig(strategy="edge"),
               SolverConfig(strategy="hybrid"),
               SolverConfig(reductions_enabled=False),
               SolverConfig(dbdd_bound_enabled=False),
               SolverConfig(reductions_enabled=False, dbdd_bound_enabled=False)]
    for i, g in enumerate(suite):
        for k in (1, 2, 3, 4):
            omegas = {maple_solve(g, k, c).omega_k for c in configs}
            assert len(omegas) == 1, f"graph #{i} k={k}: strategies disagree {omegas}"
    print(f"\nCRITERION 5 PASS: degeneracy sandwich, duality ({dual_checked} checks), "
          f"complement involution, reduction idempotence, 6-way strategy/ablation "
          f"equivalence on {len(suite)} graphs x 4 k, {time.time()-t0:.1f}s")


def test_criterion_6_branching_factor():
    assert _gammas, "no solved instances recorded (criteria 1 and 3 run first)"
    worst = 0.0
    for name, k, gamma, fanout in _gammas:
        assert gamma <= k + 1 + 1e-9, f"{name} k={k}: gamma {gamma} > k+1"
        assert fanout <= k + 1, f"{name} k={k}: node fan-out {fanout} > k+1"
        worst = max(worst, gamma / (k + 1))
    print(f"\nCRITERION 6 PASS: gamma <= k+1 on {len(_gammas)} solved instances "
          f"(max gamma/(k+1) = {worst:.2f})")
