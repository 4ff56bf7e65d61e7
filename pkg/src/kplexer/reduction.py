"""Anchored subproblem shrinking and the partition lower bound.

``reduce_subproblem`` applies, to a fixpoint, the degree / common-neighbor
deletion rules (globally, then anchored around the subproblem seed) and ends
with the common-neighborhood viability test on the whole anchor. Its contract:
the reduced graph has a k-plex of size >= p containing the anchor iff the
input graph does.

``partition_bound`` lower-bounds how many candidate vertices must be deleted
to make all degrees <= d, by handing each non-candidate pivot a block of its
candidate neighbors: at most d - delta_i of a pivot's block can survive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels as K
from .graph import Graph, Subproblem, from_edge_array


@dataclass(frozen=True)
class PartitionState:
    pivots: np.ndarray  # pivot order actually used (decreasing delta)
    deltas: np.ndarray  # delta_i = |S ∩ N(pivot_i)|
    blocks: list  # claimed candidate blocks, aligned with pivots
    residue: np.ndarray  # candidates adjacent to no pivot
    bound: int


def build_partition(g: Graph, d: int, cand, clamp: bool = False) -> PartitionState:
    """Pure-python reference for the partition bound (see kernels for the hot path)."""
    cset = set(int(v) for v in cand)
    pivots = [v for v in range(g.n) if v not in cset]
    deltas = {v: sum(1 for u in g.neighbors(v) if int(u) not in cset) for v in pivots}
    pivots.sort(key=lambda v: (-deltas[v], v))
    claimed = set(cset)
    blocks = []
    acc = 0
    for v in pivots:
        blk = sorted(claimed & set(int(u) for u in g.neighbors(v)))
        claimed -= set(blk)
        term = min(d - deltas[v], len(blk))
        if clamp and term < 0:
            term = 0
        acc += term
        blocks.append(np.array(blk, dtype=np.int32))
    residue = np.array(sorted(claimed), dtype=np.int32)
    bound = len(cset) - len(residue) - acc
    return PartitionState(
        pivots=np.array(pivots, dtype=np.int32),
        deltas=np.array([deltas[v] for v in pivots], dtype=np.int64),
        blocks=blocks,
        residue=residue,
        bound=bound,
    )


def partition_bound(g: Graph, d: int, cand, clamp: bool = False) -> int:
    return build_partition(g, d, cand, clamp=clamp).bound


def higher_order_check(g: Graph, members, k: int, p: int) -> bool:
    """True when the anchor set may still sit inside a k-plex of size >= p.

    The count is the common neighborhood of the whole set; for singletons it
    degenerates to the degree test, for pairs to the common-neighbor tests.
    """
    mem = [int(v) for v in members]
    n = len(mem)
    if n == 0:
        return True
    common = None
    lam = 0
    for i, v in enumerate(mem):
        nb = set(int(u) for u in g.neighbors(v))
        lam += sum(1 for u in mem[i + 1:] if u in nb)
        common = nb if common is None else (common & nb)
    common -= set(mem)
    return len(common) >= p - n * k + n * (n - 1) - 2 * lam


def reduce_subproblem(sub: Subproblem, full_rules: bool = True) -> Subproblem:
    """Fixpoint reduction of an anchored subproblem (possibly to the empty one)."""
    g = sub.graph
    n = g.n
    anchor = np.asarray(sub.anchor, dtype=np.int64)
    if n == 0 or anchor.size == 0:
        return sub
    adj = g.bit_matrix()
    nw = adj.shape[1]
    act = np.zeros(nw, dtype=np.uint64)
    for v in range(n):
        K.bs_set(act, v)
    # seed = anchor head (vertex mode: the anchored vertex; edge mode: both ends)
    ns = 2 if anchor.size >= 2 and g.has_edge(int(anchor[0]), int(anchor[1])) else 1
    ns = min(ns, anchor.size)
    seeds = anchor[:ns].astype(np.int32)
    svec = anchor[ns:].astype(np.int32)
    ok = K.anchored_reduce(adj, act, n, nw, seeds, ns, svec, svec.shape[0],
                           int(sub.k), int(sub.p), bool(full_rules))
    if not ok:
        empty = from_edge_array(0, np.empty((0, 2), dtype=np.int64))
        return Subproblem(empty, np.empty(0, dtype=np.int32), np.empty(0, dtype=np.int32), sub.p, sub.k)
    keep = np.array([v for v in range(n) if K.bs_get(act, v)], dtype=np.int64)
    inv = np.full(n, -1, dtype=np.int64)
    inv[keep] = np.arange(keep.shape[0])
    raw = []
    for u in keep:
        for wi in range(nw):
            w = int(adj[int(u), wi])
            while w:
                b = w & -w
                w ^= b
                v = (wi << 6) + (b.bit_length() - 1)
                if inv[v] >= 0 and inv[v] > inv[u]:
                    raw.append((inv[u], inv[v]))
    ng = from_edge_array(keep.shape[0], np.asarray(raw, dtype=np.int64).reshape(-1, 2),
                         labels=g.labels[keep])
    new_anchor = np.sort(inv[anchor]).astype(np.int32)
    cand = np.array(sorted(set(range(keep.shape[0])) - set(int(x) for x in new_anchor)), dtype=np.int32)
    return Subproblem(ng, new_anchor, cand, sub.p, sub.k)
