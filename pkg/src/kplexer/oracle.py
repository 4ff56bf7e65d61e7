"""Independent brute-force ground truth for small instances.

Deliberately naive: adjacency as Python int bitmasks, subset enumeration with
hereditary pruning. Exists to be obviously correct, not fast, and shares no
code with the solver kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph


@dataclass(frozen=True)
class OracleLimit:
    max_vertices: int = 20

    def __post_init__(self):
        assert self.max_vertices <= 24, "2^n enumeration budget"

    def check(self, size: int, what: str) -> None:
        if size > self.max_vertices:
            raise ValueError(f"{what}: {size} vertices exceeds oracle limit {self.max_vertices}")


DEFAULT_LIMIT = OracleLimit()


def _masks(g: Graph) -> list[int]:
    out = []
    for v in range(g.n):
        m = 0
        for u in g.neighbors(v):
            m |= 1 << int(u)
        out.append(m)
    return out


def is_kplex(g: Graph, members, k: int) -> bool:
    """True iff every member has at least |P|-k neighbors inside P."""
    mem = [int(v) for v in members]
    assert len(set(mem)) == len(mem)
    pmask = 0
    for v in mem:
        if v < 0 or v >= g.n:
            raise IndexError(f"vertex {v} out of range")
        pmask |= 1 << v
    need = len(mem) - k
    if need <= 0:
        return True
    for v in mem:
        inset = 0
        for u in g.neighbors(v):
            if pmask >> int(u) & 1:
                inset += 1
        if inset < need:
            return False
    return True


def brute_force_max_kplex(g: Graph, k: int, anchor=None, limit: OracleLimit = DEFAULT_LIMIT):
    """Maximum k-plex by pruned subset enumeration; returns (size, sorted tuple).

    With ``anchor`` given, only supersets of the anchor are considered;
    returns (0, ()) when the anchor itself is not a k-plex.
    """
    limit.check(g.n, "brute_force_max_kplex")
    adj = _masks(g)
    anchor = tuple(sorted(int(v) for v in anchor)) if anchor is not None else ()
    if anchor and not is_kplex(g, anchor, k):
        return 0, ()

    base_mask = 0
    for v in anchor:
        base_mask |= 1 << v
    best_set = list(anchor)
    best = [len(anchor), tuple(anchor)]

    free = [v for v in range(g.n) if not (base_mask >> v & 1)]

    def extend(cur: list[int], cur_mask: int, start: int) -> None:
        if len(cur) > best[0]:
            best[0] = len(cur)
            best[1] = tuple(sorted(cur))
        for idx in range(start, len(free)):
            v = free[idx]
            new = cur + [v]
            nm = cur_mask | (1 << v)
            need = len(new) - k
            if need > 0:
                ok = True
                for u in new:
                    if (adj[u] & nm).bit_count() < need:
                        ok = False
                        break
                if not ok:
                    continue
            extend(new, nm, idx + 1)

    extend(list(anchor), base_mask, 0)
    return best[0], best[1]


def brute_force_min_dbdd(g: Graph, d: int, cand, limit: OracleLimit = DEFAULT_LIMIT):
    """Minimum |D|, D subset of cand, with max degree of g - D at most d; None if infeasible."""
    cset = sorted(int(v) for v in cand)
    limit.check(len(cset), "brute_force_min_dbdd")
    adj = _masks(g)
    full = (1 << g.n) - 1

    def bounded(del_mask: int) -> bool:
        keep = full & ~del_mask
        m = keep
        while m:
            v = (m & -m).bit_length() - 1
            if (adj[v] & keep).bit_count() > d:
                return False
            m &= m - 1
        return True

    for size in range(len(cset) + 1):
        for combo in combinations(cset, size):
            dm = 0
            for v in combo:
                dm |= 1 << v
            if bounded(dm):
                return size
    return None
