"""Bounded-degree-deletion decision search (the solver's dual subroutine).

``dbdd_solve`` decides whether deleting at most ``t`` vertices of the
candidate set leaves every remaining degree at most ``d``. Non-candidate
vertices can never be deleted; infeasibility is the ``None`` return.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels as K
from .graph import Graph
from .reduction import partition_bound


@dataclass
class SearchStats:
    nodes: int = 0
    branch_events: int = 0
    child_total: int = 0
    max_depth: int = 0
    max_fanout: int = 0
    dbdd_calls: int = 0

    def gamma(self) -> float:
        if self.branch_events == 0:
            return 1.0
        return self.child_total / self.branch_events

    def absorb(self, raw: np.ndarray) -> None:
        self.nodes += int(raw[K.S_NODES])
        self.branch_events += int(raw[K.S_BRANCHES])
        self.child_total += int(raw[K.S_CHILDREN])
        self.max_depth = max(self.max_depth, int(raw[K.S_MAXDEPTH]))
        self.max_fanout = max(self.max_fanout, int(raw[K.S_MAXFAN]))
        self.dbdd_calls += int(raw[K.S_CALLS])


@dataclass
class DbddInstance:
    graph: Graph
    d: int
    t: int
    candidates: np.ndarray
    growing: tuple = ()

    def __post_init__(self):
        c = np.unique(np.asarray(self.candidates, dtype=np.int64))
        if c.size and (c[0] < 0 or c[-1] >= self.graph.n):
            raise ValueError("candidate set out of range")
        self.candidates = c


def dbdd_solve(inst: DbddInstance, bound_enabled: bool = True, stats: SearchStats | None = None):
    """Return growing + deleted witness (tuple) or None when infeasible."""
    g = inst.graph
    n = g.n
    if n == 0:
        return tuple(inst.growing) if inst.t >= 0 else None
    adj = g.bit_matrix()
    nw = adj.shape[1]
    act = np.zeros(nw, dtype=np.uint64)
    for v in range(n):
        K.bs_set(act, v)
    comp_like = adj  # the instance graph IS the search graph; no complementing here
    candmask = np.zeros(nw, dtype=np.uint64)
    for v in inst.candidates:
        K.bs_set(candmask, int(v))
    raw = np.zeros(8, dtype=np.int64)
    out = np.empty(n + 1, dtype=np.int64)
    st, cnt = K.dbdd_standalone(comp_like, n, nw, act, candmask, int(inst.d), int(inst.t),
                                bool(bound_enabled), -1, -1.0, raw, out)
    if stats is not None:
        stats.absorb(raw)
    if st == K.FOUND:
        return tuple(inst.growing) + tuple(sorted(int(x) for x in out[:cnt]))
    return None


def maybe_prune(inst: DbddInstance) -> bool:
    """True when the partition bound already rules out any witness within t."""
    return partition_bound(inst.graph, inst.d, inst.candidates) > inst.t
