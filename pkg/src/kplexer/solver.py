"""Exact maximum k-plex solvers.

``kplex_decide`` answers one size-p decision question by anchoring the search
on each vertex of a degeneracy ordering: a k-plex of size >= 2k-1 has diameter
at most two, so it lives inside the cone {v} ∪ N+(v) ∪ N2+(v) of its first
vertex v, with at most k-1 members taken from the two-hop shell. Each anchored
cone is decided through the complement: delete at most |Vs|-p candidates so
every remaining complement degree is at most k-1.

``kplex_com_decide`` anchors on edges of a community-degeneracy ordering
instead (two-hop shell budget 2k-2), and ``maple_solve`` wraps either into a
descending scan over p that stops at the first feasible size.

Practical extras on top of the plain anchored scan, all answer-preserving:
a per-p global reduction pass, pair-viability filtering of the two-hop
candidates, a budgeted whole-cone decision that short-circuits the subset
enumeration (the two-hop membership cap is implied by the k-plex condition,
so the cone decision is complete), and subtree pruning of the enumeration via
the anchor viability test.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels as K
from .dbdd import SearchStats
from .graph import DENSE_LIMIT, Graph
from .ordering import VertexOrdering, community_degeneracy_ordering, peel_with_bound

# nodes granted to the whole-cone decision before falling back to enumeration
CONE_BUDGET = 20_000
# projected subset count beyond which enumeration is considered hopeless and
# the cone decision runs unbudgeted
SENUM_LIMIT = 100_000.0
# community degeneracy is skipped for larger graphs unless forced
CD_EDGE_LIMIT = 5_000_000


class SolveTimeout(Exception):
    pass


@dataclass
class SolverConfig:
    strategy: str = "vertex"  # vertex | edge | hybrid
    reductions_enabled: bool = True  # second- and higher-order reduction rules
    dbdd_bound_enabled: bool = True  # partition bound inside the dual search
    time_limit: float = 1800.0  # seconds
    collect_stats: bool = True
    force_cd: bool = False

    def __post_init__(self):
        assert self.time_limit > 0
        assert self.strategy in ("vertex", "edge", "hybrid")


@dataclass
class SolveResult:
    status: str  # optimal | trivial | timeout
    omega_k: int | None
    witness: np.ndarray | None
    k: int
    strategy: str
    d: int
    cd: int | None
    elapsed: float
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def g_k(self):
        if self.omega_k is None:
            return None
        return self.d + self.k - self.omega_k

    @property
    def cg_k(self):
        if self.omega_k is None or self.cd is None:
            return None
        return self.cd + 2 * self.k - self.omega_k

    @property
    def gamma(self) -> float:
        return self.stats.gamma()


def enumerate_anchor_subsets(base, limit: int):
    """All subsets of ``base`` up to the given cardinality, smallest first."""
    from itertools import combinations

    items = sorted(int(v) for v in base)
    assert limit >= 0
    for r in range(min(limit, len(items)) + 1):
        yield from combinations(items, r)


def choose_anchor_hybrid(vertex_degree: int, edge_degree: int, k: int) -> str:
    """Anchor choice rule of the hybrid strategy (smaller cone proxy wins)."""
    return "vertex" if vertex_degree + k <= edge_degree + 2 * k else "edge"


def _bits_ids(bits: np.ndarray) -> np.ndarray:
    """Set-bit positions of a word array, ascending."""
    out = []
    for wi in range(bits.shape[0]):
        w = int(bits[wi])
        while w:
            b = w & -w
            w ^= b
            out.append((wi << 6) + b.bit_length() - 1)
    return np.array(out, dtype=np.int32)


def _popcount(bits: np.ndarray) -> int:
    return int(np.bitwise_count(bits).sum())


class _Engine:
    """Per-solve state shared by the descending-p rounds."""

    def __init__(self, g: Graph, k: int, cfg: SolverConfig, deadline: float, raw_stats: np.ndarray):
        self.g = g
        self.k = k
        self.cfg = cfg
        self.deadline = deadline
        self.raw = raw_stats
        self.dense = g.n <= DENSE_LIMIT
        self.base_bits = g.bit_matrix() if self.dense else None
        self.nw = self.base_bits.shape[1] if self.dense else 0
        self.out = np.empty(g.n + 2, dtype=np.int64)
        self.inv = np.full(g.n, -1, dtype=np.int32)

    def _check_time(self):
        if time.time() > self.deadline:
            raise SolveTimeout()

    # -- per-p preparation ---------------------------------------------------

    def _reduced(self, p: int):
        """Activity mask (+ mutated bit adjacency when dense) for this p."""
        g, k = self.g, self.k
        act8 = K.core_peel_csr(g.indptr, g.indices, g.n, p - k)
        if not self.dense:
            return None, act8
        adjp = self.base_bits.copy()
        actb = np.zeros(self.nw, dtype=np.uint64)
        for v in np.nonzero(act8)[0]:
            K.bs_set(actb, int(v))
        K._phase_global(adjp, actb, g.n, self.nw, k, p, self.cfg.reductions_enabled)
        return adjp, actb

    # -- anchored attempts ---------------------------------------------------

    def _attempt(self, adj_src, conelist, ns, n1_count, n2_count, p, slimit):
        """Gather the cone and run the anchored search; returns witness or status."""
        c = conelist.shape[0]
        cw = (c + 63) >> 6
        if adj_src is None:
            sub = K.gather_sub_csr(self.g.indptr, self.g.indices, conelist, self.inv)
        else:
            sub = K.gather_sub_bits(adj_src, conelist)
        n1mask = np.zeros(cw, dtype=np.uint64)
        for i in range(ns, ns + n1_count):
            K.bs_set(n1mask, i)
        n2loc = np.arange(ns + n1_count, c, dtype=np.int32)
        seeds = np.arange(ns, dtype=np.int32)
        st, cnt = K.solve_anchor(
            sub, c, cw, seeds, ns, n1mask, n2loc, n2_count,
            self.k, p, slimit, self.cfg.reductions_enabled, self.cfg.dbdd_bound_enabled,
            CONE_BUDGET, SENUM_LIMIT, self.deadline, self.raw, self.out)
        if st == K.FOUND:
            return conelist[self.out[:cnt]]
        if st == K.OUT_OF_TIME:
            raise SolveTimeout()
        return None

    # -- vertex-anchored scan --------------------------------------------------

    def _vertex_scan_dense(self, p, adjp, actb):
        g, k, nw = self.g, self.k, self.nw
        full_rules = self.cfg.reductions_enabled
        if _popcount(actb) < p:
            return None
        indptr2, indices2 = K.bits_to_csr(adjp, actb, g.n, nw)
        order, _, _, _ = K.peel_csr(indptr2, indices2, g.n, k)
        remaining = actb.copy()
        selfbit = np.zeros(nw, dtype=np.uint64)
        for i in range(g.n):
            v = int(order[i])
            K.bs_clear(remaining, v)
            if not K.bs_get(actb, v):
                continue
            self._check_time()
            w = self._try_vertex_anchor(p, adjp, actb, remaining, v)
            if w is not None:
                return w
        return None

    def _try_vertex_anchor(self, p, adjp, actb, remaining, v):
        g, k, nw = self.g, self.k, self.nw
        full_rules = self.cfg.reductions_enabled
        n1_bits = adjp[v] & remaining
        n1_count = _popcount(n1_bits)
        if n1_count + k < p:
            return None
        nbr_all = _bits_ids(adjp[v] & actb)
        if nbr_all.shape[0]:
            reach = np.bitwise_or.reduce(adjp[nbr_all], axis=0)
        else:
            reach = np.zeros(nw, dtype=np.uint64)
        n2_bits = reach & remaining & ~adjp[v]
        K.bs_clear(n2_bits, v)
        n2ids = _bits_ids(n2_bits)
        if full_rules and n2ids.shape[0]:
            thr = p - 2 * k + 2
            if thr > 0:
                keep = [
                    w for w in n2ids
                    if _popcount(adjp[v] & adjp[w] & actb) >= thr
                ]
                n2ids = np.array(keep, dtype=np.int32)
        slimit = k - 1
        if 1 + n1_count + min(slimit, n2ids.shape[0]) < p:
            return None
        conelist = np.concatenate([
            np.array([v], dtype=np.int32), _bits_ids(n1_bits), n2ids,
        ])
        return self._attempt(adjp, conelist, 1, n1_count, n2ids.shape[0], p, slimit)

    def _vertex_scan_sparse(self, p, act8):
        g, k = self.g, self.k
        full_rules = self.cfg.reductions_enabled
        if int(act8.sum()) < p:
            return None
        src = np.repeat(np.arange(g.n, dtype=np.int32), np.diff(g.indptr))
        keep = (act8[src] == 1) & (act8[g.indices] == 1)
        indices2 = g.indices[keep]
        counts = np.bincount(src[keep], minlength=g.n)
        indptr2 = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
        order, pos, _, _ = K.peel_csr(indptr2, indices2, g.n, k)
        adj = [set(indices2[indptr2[v]:indptr2[v + 1]].tolist()) for v in range(g.n)]
        for i in range(g.n):
            v = int(order[i])
            if not act8[v]:
                continue
            self._check_time()
            n1 = sorted(u for u in adj[v] if pos[u] > pos[v])
            if len(n1) + k < p:
                continue
            n2 = set()
            for u in adj[v]:
                n2 |= adj[u]
            n2 -= adj[v]
            n2.discard(v)
            n2 = sorted(w for w in n2 if pos[w] > pos[v])
            if full_rules and p - 2 * k + 2 > 0:
                n2 = [w for w in n2 if len(adj[v] & adj[w]) >= p - 2 * k + 2]
            slimit = k - 1
            if 1 + len(n1) + min(slimit, len(n2)) < p:
                continue
            conelist = np.array([v] + n1 + n2, dtype=np.int32)
            w = self._attempt(None, conelist, 1, len(n1), len(n2), p, slimit)
            if w is not None:
                return w
        return None

    # -- edge-anchored scan ----------------------------------------------------

    def _edge_structures(self, p, adjp, actb):
        g, nw = self.g, self.nw
        indptr2, indices2 = K.bits_to_csr(adjp, actb, g.n, nw)
        m2 = indices2.shape[0] // 2
        if m2 == 0:
            return None
        eu, ev, slot = K.edge_arrays(indptr2, indices2, g.n, m2)
        eorder, _, _ = K.cd_peel(indptr2, indices2, slot, eu, ev, g.n, m2)
        return eorder, eu, ev, adjp.copy()

    def _try_edge_anchor(self, p, actb, alive_bits, u, v):
        k, nw = self.k, self.nw
        full_rules = self.cfg.reductions_enabled
        n1_bits = alive_bits[u] & alive_bits[v]
        n1_count = _popcount(n1_bits)
        if n1_count + 2 * k < p:
            return None
        n2_bits = np.zeros(nw, dtype=np.uint64)
        for x in (u, v):
            nbr = _bits_ids(alive_bits[x])
            if nbr.shape[0]:
                reach = np.bitwise_or.reduce(alive_bits[nbr], axis=0)
                n2_bits |= reach & ~alive_bits[x]
        n2_bits &= ~n1_bits
        K.bs_clear(n2_bits, u)
        K.bs_clear(n2_bits, v)
        n2ids = _bits_ids(n2_bits)
        if full_rules and n2ids.shape[0]:
            keep = []
            for w in n2ids:
                ok = True
                for s in (u, v):
                    lam = 1 if K.bs_get(alive_bits[s], int(w)) else 0
                    if _popcount(alive_bits[s] & alive_bits[w]) < p - 2 * k + 2 - 2 * lam:
                        ok = False
                        break
                if ok:
                    lam3 = 1 + K.bs_get(alive_bits[u], int(w)) + K.bs_get(alive_bits[v], int(w))
                    if _popcount(alive_bits[u] & alive_bits[v] & alive_bits[w]) < p - 3 * k + 6 - 2 * lam3:
                        ok = False
                if ok:
                    keep.append(int(w))
            n2ids = np.array(keep, dtype=np.int32)
        slimit = 2 * k - 2
        if 2 + n1_count + min(slimit, n2ids.shape[0]) < p:
            return None
        conelist = np.concatenate([
            np.array([u, v], dtype=np.int32), _bits_ids(n1_bits), n2ids,
        ])
        return self._attempt(alive_bits, conelist, 2, n1_count, n2ids.shape[0], p, slimit)

    # -- rounds ----------------------------------------------------------------

    def round(self, p: int):
        """One decision round at size p; returns a witness array or None."""
        strategy = self.cfg.strategy
        adjp, actb = self._reduced(p)
        if not self.dense:
            if strategy != "vertex":
                raise ValueError("edge/hybrid strategies need a dense-representable graph "
                                 f"(n <= {DENSE_LIMIT})")
            return self._vertex_scan_sparse(p, actb)
        if strategy == "vertex":
            return self._vertex_scan_dense(p, adjp, actb)
        if _popcount(actb) < p:
            return None
        es = self._edge_structures(p, adjp, actb)
        if strategy == "edge":
            if es is None:
                return None
            eorder, eu, ev, alive_bits = es
            for idx in range(eorder.shape[0]):
                e = int(eorder[idx])
                u, v = int(eu[e]), int(ev[e])
                self._check_time()
                w = self._try_edge_anchor(p, actb, alive_bits, u, v)
                if w is not None:
                    return w
                K.bs_clear(alive_bits[u], v)
                K.bs_clear(alive_bits[v], u)
            return None
        # hybrid: interleave both scans, each with its own suffix context
        g, k, nw = self.g, self.k, self.nw
        indptr2, indices2 = K.bits_to_csr(adjp, actb, g.n, nw)
        order, _, _, _ = K.peel_csr(indptr2, indices2, g.n, k)
        remaining = actb.copy()
        iv = 0
        if es is None:
            eorder = np.empty(0, dtype=np.int32)
            eu = ev = eorder
            alive_bits = adjp.copy()
        else:
            eorder, eu, ev, alive_bits = es
        ie = 0
        nvert = g.n
        medge = eorder.shape[0]
        while iv < nvert or ie < medge:
            self._check_time()
            # skip dead vertex heads outright
            while iv < nvert and not K.bs_get(actb, int(order[iv])):
                K.bs_clear(remaining, int(order[iv]))
                iv += 1
            take_vertex = iv < nvert
            if iv < nvert and ie < medge:
                vhead = int(order[iv])
                dv = _popcount(adjp[vhead] & remaining)
                e = int(eorder[ie])
                de = _popcount(alive_bits[int(eu[e])] & alive_bits[int(ev[e])])
                take_vertex = choose_anchor_hybrid(dv, de, k) == "vertex"
            if take_vertex and iv < nvert:
                vhead = int(order[iv])
                K.bs_clear(remaining, vhead)
                iv += 1
                w = self._try_vertex_anchor(p, adjp, actb, remaining, vhead)
                if w is not None:
                    return w
            elif ie < medge:
                e = int(eorder[ie])
                u, v = int(eu[e]), int(ev[e])
                ie += 1
                w = self._try_edge_anchor(p, actb, alive_bits, u, v)
                if w is not None:
                    return w
                K.bs_clear(alive_bits[u], v)
                K.bs_clear(alive_bits[v], u)
        return None


def _verify_kplex(g: Graph, members: np.ndarray, k: int) -> bool:
    mem = set(int(x) for x in members)
    need = len(mem) - k
    return all(sum(1 for u in g.neighbors(v) if int(u) in mem) >= need for v in mem)


def _extend_kplex(g: Graph, base: np.ndarray, k: int) -> np.ndarray:
    """Grow a k-plex greedily (ascending id, to a fixpoint); never shrinks."""
    mem = set(int(x) for x in base)
    degs = {v: sum(1 for u in g.neighbors(v) if int(u) in mem) for v in mem}
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if v in mem:
                continue
            dv = sum(1 for u in g.neighbors(v) if int(u) in mem)
            need = len(mem) + 1 - k
            if dv < need:
                continue
            ok = all(degs[u] + (1 if g.has_edge(u, v) else 0) >= need for u in mem)
            if not ok:
                continue
            for u in g.neighbors(v):
                if int(u) in mem:
                    degs[int(u)] += 1
            mem.add(v)
            degs[v] = dv
            changed = True
    return np.array(sorted(mem), dtype=np.int32)


def kplex_decide(g: Graph, k: int, p: int, cfg: SolverConfig | None = None):
    """A k-plex of size >= p (vertex-anchored decision), or None."""
    cfg = cfg or SolverConfig()
    assert k >= 1 and p >= 2 * k - 1
    if p > g.n:
        return None
    raw = np.zeros(8, dtype=np.int64)
    eng = _Engine(g, k, cfg, time.time() + cfg.time_limit, raw)
    w = eng.round(p)
    return np.sort(w) if w is not None else None


def kplex_com_decide(g: Graph, k: int, p: int, cfg: SolverConfig | None = None):
    """Same decision anchored on community-degeneracy-ordered edges."""
    cfg = cfg or SolverConfig()
    cfg = SolverConfig(strategy="edge", reductions_enabled=cfg.reductions_enabled,
                       dbdd_bound_enabled=cfg.dbdd_bound_enabled,
                       time_limit=cfg.time_limit, collect_stats=cfg.collect_stats,
                       force_cd=cfg.force_cd)
    return kplex_decide(g, k, p, cfg)


def _unrestricted_max(g: Graph, k: int, lb_witness: np.ndarray, deadline: float,
                      raw: np.ndarray, cfg: SolverConfig):
    """Maximum k-plex below the 2k-1 threshold via the complement dual:
    a k-plex of size p exists iff n-p deletions bound the complement by k-1.

    Climbs upward from the greedy witness so that exactly one infeasibility
    proof (at the optimum plus one) is needed.
    """
    n = g.n
    best = lb_witness
    hi = min(2 * k - 2, n)
    if best.shape[0] >= hi or n > DENSE_LIMIT:
        return best.shape[0], best
    adj = g.bit_matrix()
    nw = adj.shape[1]
    act = np.zeros(nw, dtype=np.uint64)
    for v in range(n):
        K.bs_set(act, v)
    comp = np.zeros((n, nw), dtype=np.uint64)
    K._build_comp(adj, n, nw, act, comp)
    out = np.empty(n + 2, dtype=np.int64)
    p = best.shape[0] + 1
    while p <= hi:
        st, cnt = K.dbdd_standalone(comp, n, nw, act, act, k - 1, n - p,
                                    cfg.dbdd_bound_enabled, -1, deadline, raw, out)
        if st == K.OUT_OF_TIME:
            raise SolveTimeout()
        if st != K.FOUND:
            break
        wit = act.copy()
        for i in range(cnt):
            K.bs_clear(wit, int(out[i]))
        best = _bits_ids(wit)  # the dual may overdeliver; keep whatever it found
        p = best.shape[0] + 1
    return best.shape[0], best


def maple_solve(g: Graph, k: int, cfg: SolverConfig | None = None) -> SolveResult:
    """Maximum k-plex: greedy lower bound, then descend p from the degeneracy
    bound; the first feasible size is the optimum."""
    cfg = cfg or SolverConfig()
    assert k >= 1
    start = time.time()
    deadline = start + cfg.time_limit
    stats = SearchStats()
    raw = np.zeros(8, dtype=np.int64)

    def finish(status, omega, witness, d, cd):
        stats.absorb(raw)
        return SolveResult(status=status, omega_k=omega,
                           witness=np.sort(witness) if witness is not None else None,
                           k=k, strategy=cfg.strategy, d=d, cd=cd,
                           elapsed=time.time() - start, stats=stats)

    if g.n == 0:
        return finish("trivial", 0, np.empty(0, dtype=np.int32), 0, 0)

    ordering, greedy = peel_with_bound(g, k)
    if 0 < greedy.shape[0] and g.n <= DENSE_LIMIT and g.n <= 100_000:
        greedy = _extend_kplex(g, greedy, k)
    d = ordering.degeneracy
    cd = None
    need_cd = cfg.strategy in ("edge", "hybrid")
    if need_cd and g.n > DENSE_LIMIT:
        raise ValueError(f"edge/hybrid strategies need n <= {DENSE_LIMIT}")
    if need_cd or cfg.force_cd or g.m <= CD_EDGE_LIMIT:
        cd = community_degeneracy_ordering(g).community_degeneracy

    l0 = greedy.shape[0]
    l_search = max(l0, 2 * k - 2)
    p_hi = d + k
    if cfg.strategy in ("edge", "hybrid") and cd is not None:
        p_hi = min(p_hi, cd + 2 * k)
    p_hi = min(p_hi, g.n)

    eng = _Engine(g, k, cfg, deadline, raw)
    try:
        for p in range(p_hi, l_search, -1):
            w = eng.round(p)
            if w is not None:
                assert _verify_kplex(g, w, k) and w.shape[0] == p
                return finish("optimal", int(w.shape[0]), w, d, cd)
        if l0 >= 2 * k - 1:
            assert _verify_kplex(g, greedy, k)
            return finish("optimal", l0, greedy, d, cd)
        omega, wit = _unrestricted_max(g, k, greedy, deadline, raw, cfg)
        assert _verify_kplex(g, wit, k)
        return finish("trivial", int(omega), wit, d, cd)
    except SolveTimeout:
        best = greedy if l0 > 0 else None
        return finish("timeout", None, best, d, cd)
