"""Peeling orders and their parameters.

Degeneracy ordering (min-degree peel) with d(G), community-degeneracy
ordering (fewest-common-neighbors edge peel) with cd(G), the order-relative
forward neighborhoods, and the greedy peeling lower bound for k-plexes.

Ties on the peeling key always go to the smallest internal id, which makes
every ordering (and therefore every solver run) reproducible. The heap-based
peel pays an extra log factor over the classic bucket method for that.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels as K
from .graph import Graph


@dataclass(frozen=True)
class VertexOrdering:
    order: np.ndarray  # int32[n], peel order
    position: np.ndarray  # int32[n], inverse permutation
    degeneracy: int


@dataclass(frozen=True)
class EdgeOrdering:
    order: np.ndarray  # int32[m], indices into edges_uv
    edges_uv: np.ndarray  # int32[m, 2] with u < v, sorted pair order
    pop_counts: np.ndarray  # common-neighbor count of each edge when peeled
    community_degeneracy: int


def degeneracy_ordering(g: Graph) -> VertexOrdering:
    order, pos, d, _ = K.peel_csr(g.indptr, g.indices, g.n, 1)
    return VertexOrdering(order, pos, int(d))


def community_degeneracy_ordering(g: Graph) -> EdgeOrdering:
    eu, ev, slot = K.edge_arrays(g.indptr, g.indices, g.n, g.m)
    eorder, popc, cd = K.cd_peel(g.indptr, g.indices, slot, eu, ev, g.n, g.m)
    uv = np.stack([eu, ev], axis=1) if g.m else np.empty((0, 2), dtype=np.int32)
    return EdgeOrdering(eorder, uv, popc, int(cd))


def forward_neighbors(ordering: VertexOrdering, g: Graph, v: int) -> np.ndarray:
    nb = g.neighbors(v)
    return nb[ordering.position[nb] > ordering.position[v]]


def forward_two_hop(ordering: VertexOrdering, g: Graph, v: int) -> np.ndarray:
    from .graph import two_hop_neighbors

    n2 = two_hop_neighbors(g, v)
    return n2[ordering.position[n2] > ordering.position[v]]


def forward_edge_sets(ordering: EdgeOrdering, g: Graph, i: int) -> tuple[np.ndarray, np.ndarray]:
    """(N+(e_i), N2+(e_i)) of the i-th peeled edge, computed in the subgraph
    spanned by the edges e_i, ..., e_m."""
    m = ordering.order.shape[0]
    if not 0 <= i < m:
        raise IndexError("edge index out of range")
    alive_adj: dict[int, set[int]] = {}
    for j in range(i, m):
        u, v = ordering.edges_uv[ordering.order[j]]
        alive_adj.setdefault(int(u), set()).add(int(v))
        alive_adj.setdefault(int(v), set()).add(int(u))
    u, v = (int(x) for x in ordering.edges_uv[ordering.order[i]])
    nu, nv = alive_adj[u], alive_adj[v]
    common = (nu & nv) - {u, v}
    reach_u = set().union(*(alive_adj[w] for w in nu)) - nu - {u}
    reach_v = set().union(*(alive_adj[w] for w in nv)) - nv - {v}
    two = (reach_u | reach_v) - {u, v} - common
    to_arr = lambda s: np.array(sorted(s), dtype=np.int32)
    return to_arr(common), to_arr(two)


def greedy_lower_bound(g: Graph, k: int) -> np.ndarray:
    """Largest suffix of the min-degree peel that forms a k-plex."""
    assert k >= 1
    order, _, _, start = K.peel_csr(g.indptr, g.indices, g.n, k)
    return np.sort(order[int(start):])


def peel_with_bound(g: Graph, k: int) -> tuple[VertexOrdering, np.ndarray]:
    """One peel yielding both the ordering and the greedy k-plex witness."""
    order, pos, d, start = K.peel_csr(g.indptr, g.indices, g.n, k)
    return VertexOrdering(order, pos, int(d)), np.sort(order[int(start):])
