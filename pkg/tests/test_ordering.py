import math

import numpy as np
import pytest

from kplexer import (
    community_degeneracy_ordering,
    degeneracy_ordering,
    forward_edge_sets,
    forward_neighbors,
    forward_two_hop,
    gnp,
    greedy_lower_bound,
    is_kplex,
    two_hop_neighbors,
)
from kplexer.graph import from_edge_array, parse_graph
from kplexer.oracle import brute_force_max_kplex


def complete_graph(n):
    return from_edge_array(n, np.array([(i, j) for i in range(n) for j in range(i + 1, n)]))


def cycle(n):
    return from_edge_array(n, np.array([(i, (i + 1) % n) for i in range(n)]))


def test_degeneracy_basics():
    assert degeneracy_ordering(complete_graph(7)).degeneracy == 6
    assert degeneracy_ordering(cycle(5)).degeneracy == 2


def test_degeneracy_order_is_consistent():
    for seed in range(10):
        g = gnp(14, 0.4, seed)
        o = degeneracy_ordering(g)
        assert sorted(o.order.tolist()) == list(range(g.n))
        assert np.array_equal(o.order[o.position], np.arange(g.n))
        # recomputing the max forward degree along the order reproduces d
        fwd = [forward_neighbors(o, g, v).size for v in range(g.n)]
        assert max(fwd) == o.degeneracy
        # each vertex has at most d later neighbors, some vertex exactly d
        assert all(f <= o.degeneracy for f in fwd)


def test_community_degeneracy_basics():
    tree = parse_graph("0 1\n1 2\n2 3\n1 4\n")
    assert community_degeneracy_ordering(tree).community_degeneracy == 0
    assert community_degeneracy_ordering(complete_graph(6)).community_degeneracy == 4
    assert community_degeneracy_ordering(cycle(8)).community_degeneracy == 0


def test_edge_ordering_attains_cd():
    for seed in range(6):
        g = gnp(12, 0.5, seed + 100)
        eo = community_degeneracy_ordering(g)
        assert eo.pop_counts.max(initial=0) == eo.community_degeneracy
        # every prefix-pop count is within cd
        assert all(c <= eo.community_degeneracy for c in eo.pop_counts)


def test_cd_versus_d_inequality():
    for seed in range(8):
        g = gnp(13, 0.5, seed)
        d = degeneracy_ordering(g).degeneracy
        cd = community_degeneracy_ordering(g).community_degeneracy
        if g.m:
            assert cd + 1 <= d <= math.sqrt(g.n + 2 * g.m)


def test_forward_sets_match_filter():
    g = gnp(12, 0.3, 9)
    o = degeneracy_ordering(g)
    last = int(o.order[-1])
    assert forward_neighbors(o, g, last).size == 0
    assert forward_two_hop(o, g, last).size == 0
    for v in range(g.n):
        fn = set(forward_neighbors(o, g, v).tolist())
        want = {int(u) for u in g.neighbors(v) if o.position[u] > o.position[v]}
        assert fn == want
        f2 = set(forward_two_hop(o, g, v).tolist())
        want2 = {int(u) for u in two_hop_neighbors(g, v) if o.position[u] > o.position[v]}
        assert f2 == want2


def test_forward_sets_k4():
    g = complete_graph(4)
    o = degeneracy_ordering(g)
    first = int(o.order[0])
    assert forward_neighbors(o, g, first).size == 3
    assert forward_two_hop(o, g, first).size == 0


def test_forward_edge_sets_last_and_triangle():
    tri = parse_graph("0 1\n1 2\n2 0\n")
    eo = community_degeneracy_ordering(tri)
    n1, n2 = forward_edge_sets(eo, tri, tri.m - 1)
    assert n1.size == 0 and n2.size == 0
    n1, n2 = forward_edge_sets(eo, tri, 0)
    assert n1.size <= 1


def _spanned_suffix_oracle(eo, g, i):
    alive = [tuple(int(x) for x in eo.edges_uv[eo.order[j]]) for j in range(i, g.m)]
    adj = {}
    for u, v in alive:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    u, v = (int(x) for x in eo.edges_uv[eo.order[i]])
    common = (adj[u] & adj[v]) - {u, v}

    def n2of(x):
        r = set()
        for w in adj[x]:
            r |= adj[w]
        return r - adj[x] - {x}

    two = (n2of(u) | n2of(v)) - {u, v} - common
    return sorted(common), sorted(two)


def test_forward_edge_sets_match_spanned_oracle():
    g = gnp(10, 0.4, 21)
    eo = community_degeneracy_ordering(g)
    for i in range(g.m):
        n1, n2 = forward_edge_sets(eo, g, i)
        c, t = _spanned_suffix_oracle(eo, g, i)
        assert n1.tolist() == c
        assert n2.tolist() == t


def test_greedy_lower_bound():
    kn = complete_graph(6)
    for k in (1, 2, 3):
        assert greedy_lower_bound(kn, k).size == 6
    empty = from_edge_array(5, np.empty((0, 2), dtype=np.int64))
    assert greedy_lower_bound(empty, 2).size <= 2
    for seed in range(10):
        g = gnp(14, 0.5, seed + 50)
        for k in (1, 2, 3):
            got = greedy_lower_bound(g, k)
            assert is_kplex(g, got, k)
            assert got.size <= brute_force_max_kplex(g, k)[0]


def test_greedy_is_largest_peel_suffix():
    for seed in range(6):
        g = gnp(13, 0.5, seed + 70)
        for k in (1, 2):
            o = degeneracy_ordering(g)
            got = set(greedy_lower_bound(g, k).tolist())
            # witness is some suffix of the peel order
            start = g.n - len(got)
            assert set(o.order[start:].tolist()) == got
            # and no longer suffix is a k-plex
            for i in range(start):
                assert not is_kplex(g, o.order[i:], k)
