import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kplexer import OracleLimit, brute_force_max_kplex, brute_force_min_dbdd, complement, gnp, is_kplex
from kplexer.graph import from_edge_array, parse_graph


def complete_graph(n):
    return from_edge_array(n, np.array([(i, j) for i in range(n) for j in range(i + 1, n)]))


def cycle(n):
    return from_edge_array(n, np.array([(i, (i + 1) % n) for i in range(n)]))


def test_is_kplex_basics():
    g = gnp(8, 0.5, 0)
    for v in range(g.n):
        assert is_kplex(g, [v], 1)
    assert is_kplex(g, [], 1)
    assert is_kplex(cycle(4), range(4), 2)
    assert not is_kplex(cycle(5), range(5), 2)


def test_is_kplex_matching_complement():
    # K6 minus a perfect matching: every vertex misses exactly one
    k6 = complete_graph(6)
    edges = [(u, v) for u, v in k6.edges().tolist() if (u, v) not in [(0, 1), (2, 3), (4, 5)]]
    g = from_edge_array(6, np.array(edges))
    assert is_kplex(g, range(6), 2)
    assert not is_kplex(g, range(6), 1)


def test_max_kplex_families():
    assert brute_force_max_kplex(complete_graph(5), 1)[0] == 5
    # any 4 vertices of C5 induce a path whose endpoints keep only one
    # in-set neighbor < 4 - 2, so the optimum is 3
    assert brute_force_max_kplex(cycle(5), 2)[0] == 3
    edgeless = from_edge_array(6, np.empty((0, 2), dtype=np.int64))
    assert brute_force_max_kplex(edgeless, 3)[0] == 3


def test_max_kplex_monotone_in_k():
    for seed in range(8):
        g = gnp(10, 0.4, seed)
        sizes = [brute_force_max_kplex(g, k)[0] for k in (1, 2, 3, 4)]
        assert sizes == sorted(sizes)


def test_witness_is_valid_and_lexicographic():
    g = gnp(10, 0.5, 42)
    size, wit = brute_force_max_kplex(g, 2)
    assert len(wit) == size and is_kplex(g, wit, 2)
    assert list(wit) == sorted(wit)


def test_anchored_variants():
    g = gnp(10, 0.5, 11)
    size, wit = brute_force_max_kplex(g, 2, anchor=[0, 1])
    if size:
        assert {0, 1} <= set(wit)
    # an invalid anchor yields (0, ())
    c5 = cycle(5)
    assert brute_force_max_kplex(c5, 1, anchor=[0, 2]) == (0, ())


def test_min_dbdd_cases():
    path = parse_graph("0 1\n1 2\n")
    assert brute_force_min_dbdd(path, 2, range(3)) == 0
    k5 = complete_graph(5)
    assert brute_force_min_dbdd(k5, 0, range(5)) == 4
    star = parse_graph("0 1\n0 2\n0 3\n")
    assert brute_force_min_dbdd(star, 1, range(4)) == 1
    # infeasible when the offending vertex is out of reach
    assert brute_force_min_dbdd(star, 0, [1, 2]) is None


def test_oracle_limit():
    g = gnp(22, 0.2, 1)
    with pytest.raises(ValueError):
        brute_force_max_kplex(g, 1, limit=OracleLimit(20))
    with pytest.raises(AssertionError):
        OracleLimit(30)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_duality_spot_check(seed, k):
    g = gnp(9, 0.5, seed)
    size, _ = brute_force_max_kplex(g, k)
    dual = brute_force_min_dbdd(complement(g), k - 1, range(g.n))
    assert size == g.n - dual
