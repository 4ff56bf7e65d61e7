"""Hot kernels: bitset graph surgery and the bounded-degree-deletion search.

Everything here is nopython-compatible and operates on uint64 bitset rows
(``adj[v]`` = neighbor bitset of vertex ``v``). Compiled with numba unless
``KPLEXER_JIT=0``; the interpreted fallback runs the identical source.

Conventions:
* vertex sets are uint64 bitsets of ``nw = ceil(n/64)`` words,
* adjacency matrices are ``uint64[n, nw]`` and symmetric,
* dead vertices keep stale rows; every query masks with the activity bitset,
* all tie-breaks pick the smallest vertex id for reproducible runs.
"""

from __future__ import annotations

import numpy as np

from ._jit import maybe_njit, wall_clock

# dbdd_run / solve_anchor status codes
FOUND = 1
NO = 0
OUT_OF_BUDGET = -2
OUT_OF_TIME = -3

# stats slots
S_NODES = 0
S_BRANCHES = 1
S_CHILDREN = 2
S_MAXDEPTH = 3
S_MAXFAN = 4
S_CALLS = 5

_DEL = 0
_UNC = 1

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_LOW7 = np.uint64(0x7F)
_ONE = np.uint64(1)
_ZERO = np.uint64(0)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S8 = np.uint64(8)
_S16 = np.uint64(16)
_S32 = np.uint64(32)


@maybe_njit
def popcnt(x):
    x = x - ((x >> _S1) & _M1)
    x = (x & _M2) + ((x >> _S2) & _M2)
    x = (x + (x >> _S4)) & _M4
    x = x + (x >> _S8)
    x = x + (x >> _S16)
    x = x + (x >> _S32)
    return np.int64(x & _LOW7)


@maybe_njit
def bs_get(bs, v):
    return np.int64((bs[v >> 6] >> np.uint64(v & 63)) & _ONE)


@maybe_njit
def bs_set(bs, v):
    bs[v >> 6] |= _ONE << np.uint64(v & 63)


@maybe_njit
def bs_clear(bs, v):
    bs[v >> 6] &= ~(_ONE << np.uint64(v & 63))


@maybe_njit
def bs_count(bs):
    s = np.int64(0)
    for i in range(bs.shape[0]):
        s += popcnt(bs[i])
    return s


@maybe_njit
def and2_count(a, b):
    s = np.int64(0)
    for i in range(a.shape[0]):
        s += popcnt(a[i] & b[i])
    return s


@maybe_njit
def and3_count(a, b, c):
    s = np.int64(0)
    for i in range(a.shape[0]):
        s += popcnt(a[i] & b[i] & c[i])
    return s


# ---------------------------------------------------------------------------
# lazy binary heap of int64 keys (used by both peeling orders)


@maybe_njit
def _heap_push(heap, size, key):
    i = size
    heap[i] = key
    while i > 0:
        par = (i - 1) >> 1
        if heap[par] <= heap[i]:
            break
        heap[par], heap[i] = heap[i], heap[par]
        i = par
    return size + 1


@maybe_njit
def _heap_pop(heap, size):
    top = heap[0]
    size -= 1
    heap[0] = heap[size]
    i = 0
    while True:
        l = 2 * i + 1
        if l >= size:
            break
        c = l
        r = l + 1
        if r < size and heap[r] < heap[l]:
            c = r
        if heap[i] <= heap[c]:
            break
        heap[i], heap[c] = heap[c], heap[i]
        i = c
    return top, size


@maybe_njit
def peel_csr(indptr, indices, n, k):
    """Min-degree peel (smallest id on ties).

    Returns (order, pos, degeneracy, i*) where order[i*:] is the largest
    peeling suffix forming a k-plex (the greedy lower bound witness).
    """
    order = np.empty(n, np.int32)
    pos = np.empty(n, np.int32)
    if n == 0:
        return order, pos, np.int64(0), np.int64(0)
    deg = np.empty(n, np.int64)
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
    heap = np.empty(n + indices.shape[0] + 1, np.int64)
    hs = 0
    for v in range(n):
        hs = _heap_push(heap, hs, deg[v] * n + v)
    alive = np.ones(n, np.uint8)
    d_out = np.int64(0)
    best = np.int64(n)
    i = 0
    while i < n:
        key, hs = _heap_pop(heap, hs)
        v = key % n
        dv = key // n
        if alive[v] == 0 or deg[v] != dv:
            continue
        alive[v] = 0
        order[i] = v
        pos[v] = i
        if dv > d_out:
            d_out = dv
        if best == n and dv >= (n - i) - k:
            best = i
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if alive[u]:
                deg[u] -= 1
                hs = _heap_push(heap, hs, deg[u] * n + u)
        i += 1
    return order, pos, d_out, best


@maybe_njit
def core_peel_csr(indptr, indices, n, mindeg):
    """Iteratively drop vertices of degree < mindeg; returns activity flags."""
    act = np.ones(n, np.uint8)
    deg = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    sp = 0
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
        if deg[v] < mindeg:
            act[v] = 0
            stack[sp] = v
            sp += 1
    while sp > 0:
        sp -= 1
        v = stack[sp]
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if act[u]:
                deg[u] -= 1
                if deg[u] < mindeg:
                    act[u] = 0
                    stack[sp] = u
                    sp += 1
    return act


@maybe_njit
def edge_arrays(indptr, indices, n, m):
    """Edge ids in sorted (u, v) order plus the slot -> edge-id map."""
    eu = np.empty(m, np.int32)
    ev = np.empty(m, np.int32)
    slot_eid = np.empty(indices.shape[0], np.int64)
    eid = 0
    for u in range(n):
        for j in range(indptr[u], indptr[u + 1]):
            w = indices[j]
            if w > u:
                eu[eid] = u
                ev[eid] = w
                slot_eid[j] = eid
                lo = indptr[w]
                hi = indptr[w + 1] - 1
                while lo < hi:
                    mid = (lo + hi) >> 1
                    if indices[mid] < u:
                        lo = mid + 1
                    else:
                        hi = mid
                slot_eid[lo] = eid
                eid += 1
    return eu, ev, slot_eid


@maybe_njit
def cd_peel(indptr, indices, slot_eid, eu, ev, n, m):
    """Fewest-common-neighbors edge peel (smallest edge id on ties).

    Returns (edge order, count at pop, community degeneracy). Counts are
    taken in the subgraph spanned by the not-yet-removed edges.
    """
    eorder = np.empty(m, np.int32)
    popc = np.empty(m, np.int64)
    if m == 0:
        return eorder, popc, np.int64(0)
    cnt = np.zeros(m, np.int64)
    total = np.int64(0)
    for e in range(m):
        u = eu[e]
        v = ev[e]
        iu = indptr[u]
        endu = indptr[u + 1]
        iv = indptr[v]
        endv = indptr[v + 1]
        c = 0
        while iu < endu and iv < endv:
            a = indices[iu]
            b = indices[iv]
            if a == b:
                c += 1
                iu += 1
                iv += 1
            elif a < b:
                iu += 1
            else:
                iv += 1
        cnt[e] = c
        total += c
    heap = np.empty(m + 2 * total + 8, np.int64)
    hs = 0
    for e in range(m):
        hs = _heap_push(heap, hs, cnt[e] * m + e)
    ealive = np.ones(m, np.uint8)
    cd = np.int64(0)
    i = 0
    while i < m:
        key, hs = _heap_pop(heap, hs)
        e = key % m
        ce = key // m
        if ealive[e] == 0 or cnt[e] != ce:
            continue
        ealive[e] = 0
        eorder[i] = e
        popc[i] = ce
        if ce > cd:
            cd = ce
        u = eu[e]
        v = ev[e]
        iu = indptr[u]
        endu = indptr[u + 1]
        iv = indptr[v]
        endv = indptr[v + 1]
        while iu < endu and iv < endv:
            a = indices[iu]
            b = indices[iv]
            if a == b:
                e1 = slot_eid[iu]
                e2 = slot_eid[iv]
                if ealive[e1] == 1 and ealive[e2] == 1:
                    cnt[e1] -= 1
                    hs = _heap_push(heap, hs, cnt[e1] * m + e1)
                    cnt[e2] -= 1
                    hs = _heap_push(heap, hs, cnt[e2] * m + e2)
                iu += 1
                iv += 1
            elif a < b:
                iu += 1
            else:
                iv += 1
        i += 1
    return eorder, popc, cd


@maybe_njit
def bits_to_csr(adj, act, n, nw):
    indptr = np.zeros(n + 1, np.int64)
    for v in range(n):
        if bs_get(act, v) == 1:
            c = 0
            for wi in range(nw):
                c += popcnt(adj[v, wi] & act[wi])
            indptr[v + 1] = c
    for v in range(n):
        indptr[v + 1] += indptr[v]
    indices = np.empty(indptr[n], np.int32)
    for v in range(n):
        if bs_get(act, v) == 1:
            at = indptr[v]
            for wi in range(nw):
                w = adj[v, wi] & act[wi]
                while w:
                    b = w & (~w + _ONE)
                    w ^= b
                    indices[at] = (wi << 6) + popcnt(b - _ONE)
                    at += 1
    return indptr, indices


@maybe_njit
def gather_sub_csr(indptr, indices, ids, inv):
    """Induced bitset adjacency for the vertices ``ids`` (inv: int32[n] = -1 scratch)."""
    c = ids.shape[0]
    cw = (c + 63) >> 6
    sub = np.zeros((c, cw), np.uint64)
    for i in range(c):
        inv[ids[i]] = i
    for i in range(c):
        v = ids[i]
        for j in range(indptr[v], indptr[v + 1]):
            t = inv[indices[j]]
            if t >= 0:
                sub[i, t >> 6] |= _ONE << np.uint64(t & 63)
    for i in range(c):
        inv[ids[i]] = -1
    return sub


@maybe_njit
def gather_sub_bits(adj, ids):
    c = ids.shape[0]
    cw = (c + 63) >> 6
    sub = np.zeros((c, cw), np.uint64)
    for i in range(c):
        for j in range(c):
            if i != j and bs_get(adj[ids[i]], ids[j]) == 1:
                sub[i, j >> 6] |= _ONE << np.uint64(j & 63)
    return sub


# ---------------------------------------------------------------------------
# reduction rules


@maybe_njit
def _phase_global(adj, act, n, nw, k, p, full_rules):
    """Degree and common-neighbor pruning to a fixpoint (mutates adj/act)."""
    any_change = 0
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if bs_get(act, v) == 0:
                continue
            dv = 0
            for wi in range(nw):
                dv += popcnt(adj[v, wi] & act[wi])
            if dv < p - k:
                bs_clear(act, v)
                changed = True
                any_change = 1
        if full_rules and p - 2 * k > 0:
            for v in range(n):
                if bs_get(act, v) == 0:
                    continue
                for wi in range(nw):
                    w = adj[v, wi] & act[wi]
                    while w:
                        b = w & (~w + _ONE)
                        w ^= b
                        u = (wi << 6) + popcnt(b - _ONE)
                        if u <= v:
                            continue
                        c = 0
                        for xi in range(nw):
                            c += popcnt(adj[v, xi] & adj[u, xi] & act[xi])
                        if c < p - 2 * k:
                            bs_clear(adj[v], u)
                            bs_clear(adj[u], v)
                            changed = True
                            any_change = 1
    return any_change


@maybe_njit
def anchor_survives(adj, act, nw, anchor, alen, k, p):
    """Common-neighborhood viability test for an anchor set (1 = survives)."""
    if alen == 0:
        return 1
    cn = np.empty(nw, np.uint64)
    for wi in range(nw):
        cn[wi] = act[wi]
    for i in range(alen):
        a = anchor[i]
        for wi in range(nw):
            cn[wi] &= adj[a, wi]
    lam = 0
    for i in range(alen):
        for j in range(i + 1, alen):
            if bs_get(adj[anchor[i]], anchor[j]) == 1:
                lam += 1
        bs_clear(cn, anchor[i])
    cnt = bs_count(cn)
    na = alen
    if cnt < p - na * k + na * (na - 1) - 2 * lam:
        return 0
    return 1


@maybe_njit
def anchor_budget_prune(adj, act, n, nw, anchor, alen, k, p):
    """1 when no k-plex of size >= p containing the anchor can exist.

    Every member may miss at most k-1 others, so the summed non-adjacency of a
    k-plex toward the anchor is at most (k-1)|A| minus what the anchor itself
    already consumes; the cheapest p-|A| outside deficiencies must fit.
    """
    if alen == 0:
        return 0
    budget = (k - 1) * alen
    amask = np.zeros(nw, np.uint64)
    for i in range(alen):
        bs_set(amask, anchor[i])
    for i in range(alen):
        for j in range(i + 1, alen):
            if bs_get(adj[anchor[i]], anchor[j]) == 0:
                budget -= 2
    need = p - alen
    if need <= 0:
        return 1 if budget < 0 else 0
    if budget < 0:
        return 1
    buckets = np.zeros(alen + 1, np.int64)
    for wi in range(nw):
        w = act[wi] & ~amask[wi]
        while w:
            b = w & (~w + _ONE)
            w ^= b
            x = (wi << 6) + popcnt(b - _ONE)
            dfx = alen - and2_count(adj[x], amask)
            buckets[dfx] += 1
    taken = np.int64(0)
    cost = np.int64(0)
    for dv in range(alen + 1):
        c = buckets[dv]
        if taken + c > need:
            c = need - taken
        cost += c * dv
        taken += c
        if taken == need:
            break
    if taken < need:
        return 1
    if cost > budget:
        return 1
    return 0


@maybe_njit
def anchored_reduce(adj, act, n, nw, seeds, ns, svec, slen, k, p, full_rules):
    """Shrink an anchored subproblem (mutates adj/act). Returns 0 when the
    subproblem is proven empty (anchor deleted or viability test failed).

    The degree/common-neighbor phase and the anchored one-hop/two-hop phases
    are iterated jointly to a fixpoint; deletions in a later phase can
    re-enable an earlier rule."""
    while True:
        outer = _phase_global(adj, act, n, nw, k, p, full_rules)
        for i in range(ns):
            if bs_get(act, seeds[i]) == 0:
                return 0
        if full_rules and ns == 1:
            seed = seeds[0]
            # freeze one-hop and two-hop shells around the seed
            hop1 = np.empty(n, np.int32)
            h1 = 0
            for wi in range(nw):
                w = adj[seed, wi] & act[wi]
                while w:
                    b = w & (~w + _ONE)
                    w ^= b
                    hop1[h1] = (wi << 6) + popcnt(b - _ONE)
                    h1 += 1
            reach = np.zeros(nw, np.uint64)
            for i in range(h1):
                for wi in range(nw):
                    reach[wi] |= adj[hop1[i], wi] & act[wi]
            for wi in range(nw):
                reach[wi] &= ~adj[seed, wi]
            bs_clear(reach, seed)
            hop2 = np.empty(n, np.int32)
            h2 = 0
            for wi in range(nw):
                w = reach[wi]
                while w:
                    b = w & (~w + _ONE)
                    w ^= b
                    hop2[h2] = (wi << 6) + popcnt(b - _ONE)
                    h2 += 1
            # one-hop phase
            changed = True
            while changed:
                changed = False
                for i in range(h1):
                    u = hop1[i]
                    if bs_get(act, u) == 0:
                        continue
                    if and3_count(adj[seed], adj[u], act) < p - 2 * k:
                        bs_clear(act, u)
                        changed = True
                        outer = 1
                for i in range(h1):
                    u = hop1[i]
                    if bs_get(act, u) == 0:
                        continue
                    for j in range(i + 1, h1):
                        v = hop1[j]
                        if bs_get(act, v) == 0 or bs_get(adj[u], v) == 0:
                            continue
                        c = 0
                        for xi in range(nw):
                            c += popcnt(adj[seed, xi] & adj[u, xi] & adj[v, xi] & act[xi])
                        if c < p - 3 * k:
                            bs_clear(adj[u], v)
                            bs_clear(adj[v], u)
                            changed = True
                            outer = 1
            # two-hop phase
            changed = True
            while changed:
                changed = False
                for i in range(h2):
                    u = hop2[i]
                    if bs_get(act, u) == 0:
                        continue
                    if and3_count(adj[seed], adj[u], act) < p - 2 * k + 2:
                        bs_clear(act, u)
                        changed = True
                        outer = 1
                for i in range(h1):
                    u = hop1[i]
                    if bs_get(act, u) == 0:
                        continue
                    for j in range(h2):
                        v = hop2[j]
                        if bs_get(act, v) == 0 or bs_get(adj[u], v) == 0:
                            continue
                        c = 0
                        for xi in range(nw):
                            c += popcnt(adj[seed, xi] & adj[u, xi] & adj[v, xi] & act[xi])
                        if c < p - 3 * k + 2:
                            bs_clear(adj[u], v)
                            bs_clear(adj[v], u)
                            changed = True
                            outer = 1
                for i in range(h2):
                    u = hop2[i]
                    if bs_get(act, u) == 0:
                        continue
                    for j in range(i + 1, h2):
                        v = hop2[j]
                        if bs_get(act, v) == 0 or bs_get(adj[u], v) == 0:
                            continue
                        c = 0
                        for xi in range(nw):
                            c += popcnt(adj[seed, xi] & adj[u, xi] & adj[v, xi] & act[xi])
                        if c < p - 3 * k + 4:
                            bs_clear(adj[u], v)
                            bs_clear(adj[v], u)
                            changed = True
                            outer = 1
        elif full_rules and ns == 2:
            u0 = seeds[0]
            v0 = seeds[1]
            changed = True
            while changed:
                changed = False
                for x in range(n):
                    if bs_get(act, x) == 0 or x == u0 or x == v0:
                        continue
                    killed = False
                    for si in range(2):
                        sdd = seeds[si]
                        lam2 = bs_get(adj[sdd], x)
                        if and3_count(adj[sdd], adj[x], act) < p - 2 * k + 2 - 2 * lam2:
                            killed = True
                            break
                    if not killed:
                        lam3 = 1 + bs_get(adj[u0], x) + bs_get(adj[v0], x)
                        c = 0
                        for xi in range(nw):
                            c += popcnt(adj[u0, xi] & adj[v0, xi] & adj[x, xi] & act[xi])
                        if c < p - 3 * k + 6 - 2 * lam3:
                            killed = True
                    if killed:
                        bs_clear(act, x)
                        changed = True
                        outer = 1
                for x in range(n):
                    if bs_get(act, x) == 0 or x == u0 or x == v0:
                        continue
                    for wi in range(nw):
                        w = adj[x, wi] & act[wi]
                        while w:
                            b = w & (~w + _ONE)
                            w ^= b
                            y = (wi << 6) + popcnt(b - _ONE)
                            if y <= x or y == u0 or y == v0:
                                continue
                            for si in range(2):
                                sdd = seeds[si]
                                lam3 = 1 + bs_get(adj[sdd], x) + bs_get(adj[sdd], y)
                                c = 0
                                for xi in range(nw):
                                    c += popcnt(adj[sdd, xi] & adj[x, xi] & adj[y, xi] & act[xi])
                                if c < p - 3 * k + 6 - 2 * lam3:
                                    bs_clear(adj[x], y)
                                    bs_clear(adj[y], x)
                                    changed = True
                                    outer = 1
                                    break
        if outer == 0:
            break
    # anchor must have survived; viability test on the full anchor
    anchor = np.empty(ns + slen, np.int64)
    for i in range(ns):
        anchor[i] = seeds[i]
    for j in range(slen):
        anchor[ns + j] = svec[j]
    for i in range(ns + slen):
        if bs_get(act, anchor[i]) == 0:
            return 0
    if full_rules:
        if anchor_survives(adj, act, nw, anchor, ns + slen, k, p) == 0:
            return 0
    return 1


# ---------------------------------------------------------------------------
# partition lower bound for the minimum d-bdd


@maybe_njit
def partition_bound_bits(comp, nw, alive, cand, d, piv, dlt, claimed):
    q = 0
    for wi in range(nw):
        w = alive[wi] & ~cand[wi]
        while w:
            b = w & (~w + _ONE)
            w ^= b
            piv[q] = (wi << 6) + popcnt(b - _ONE)
            q += 1
    for i in range(q):
        v = piv[i]
        c = np.int64(0)
        for wi in range(nw):
            c += popcnt(comp[v, wi] & alive[wi] & ~cand[wi])
        dlt[i] = c
    # pivots in decreasing delta order, smallest id on ties
    for i in range(1, q):
        pv = piv[i]
        dv = dlt[i]
        j = i - 1
        while j >= 0 and (dlt[j] < dv or (dlt[j] == dv and piv[j] > pv)):
            piv[j + 1] = piv[j]
            dlt[j + 1] = dlt[j]
            j -= 1
        piv[j + 1] = pv
        dlt[j + 1] = dv
    total = np.int64(0)
    for wi in range(nw):
        claimed[wi] = alive[wi] & cand[wi]
        total += popcnt(claimed[wi])
    acc = np.int64(0)
    for i in range(q):
        v = piv[i]
        blk = np.int64(0)
        for wi in range(nw):
            blk += popcnt(comp[v, wi] & claimed[wi])
            claimed[wi] &= ~comp[v, wi]
        term = d - dlt[i]
        if blk < term:
            term = blk
        acc += term
    pi0 = np.int64(0)
    for wi in range(nw):
        pi0 += popcnt(claimed[wi])
    return total - pi0 - acc


# ---------------------------------------------------------------------------
# the bounded-degree-deletion decision search


@maybe_njit
def _op_delete(comp, nw, alive, deg, trail, trail_len, dstack, dlen, v):
    trail[trail_len, 0] = _DEL
    trail[trail_len, 1] = v
    dstack[dlen] = v
    bs_clear(alive, v)
    for xi in range(nw):
        ww = comp[v, xi] & alive[xi]
        while ww:
            bb = ww & (~ww + _ONE)
            ww ^= bb
            deg[(xi << 6) + popcnt(bb - _ONE)] -= 1
    return trail_len + 1, dlen + 1


@maybe_njit
def _op_unc(cand, trail, trail_len, v):
    trail[trail_len, 0] = _UNC
    trail[trail_len, 1] = v
    bs_clear(cand, v)
    return trail_len + 1


@maybe_njit
def _unwind(comp, nw, alive, cand, deg, trail, mark, trail_len, dlen):
    while trail_len > mark:
        trail_len -= 1
        op = trail[trail_len, 0]
        v = trail[trail_len, 1]
        if op == _DEL:
            dlen -= 1
            bs_set(alive, v)
            c = np.int64(0)
            for xi in range(nw):
                ww = comp[v, xi] & alive[xi]
                while ww:
                    bb = ww & (~ww + _ONE)
                    ww ^= bb
                    deg[(xi << 6) + popcnt(bb - _ONE)] += 1
                    c += 1
            deg[v] = c
        else:
            bs_set(cand, v)
    return trail_len, dlen


@maybe_njit
def dbdd_run(comp, n, nw, alive, cand, deg, d, t0, use_bound,
             node_budget, deadline, stats,
             trail, frames, vlists, dstack, out_del, sc1, sc2, piv, dlt):
    """Decide whether <= t0 deletions from the candidate set bound all degrees by d.

    Works in-place on alive/cand/deg (caller reinitializes between calls).
    Returns (status, count); on FOUND the deleted set is out_del[:count].
    """
    nodes_start = stats[S_NODES]
    t = t0
    trail_len = 0
    dlen = 0
    depth = 0
    mode_enter = True
    tick = 0
    while True:
        if mode_enter:
            fr = frames[depth]
            fr[0] = trail_len  # trail mark
            fr[2] = t          # t on entry
            failed = False
            u_p = -1
            while True:  # reduction rules, applied until none fires
                stats[S_NODES] += 1
                tick += 1
                if tick >= 4096:
                    tick = 0
                    if node_budget >= 0 and stats[S_NODES] - nodes_start > node_budget:
                        return OUT_OF_BUDGET, 0
                    if deadline > 0.0 and wall_clock() > deadline:
                        return OUT_OF_TIME, 0
                if t < 0:
                    failed = True
                    break
                # rule 1: some non-candidate keeps degree > d even if all of C goes
                r1 = False
                for wi in range(nw):
                    sc1[wi] = alive[wi] & ~cand[wi]
                for wi in range(nw):
                    w = sc1[wi]
                    while w:
                        b = w & (~w + _ONE)
                        w ^= b
                        v = (wi << 6) + popcnt(b - _ONE)
                        c = np.int64(0)
                        for xi in range(nw):
                            c += popcnt(comp[v, xi] & sc1[xi])
                        if c > d:
                            r1 = True
                            break
                    if r1:
                        break
                if r1:
                    failed = True
                    break
                # rule 2 scan: max degree, plus the >d mask for rule 4
                maxdeg = np.int64(-1)
                u_p = -1
                for wi in range(nw):
                    sc2[wi] = _ZERO
                for wi in range(nw):
                    w = alive[wi]
                    while w:
                        b = w & (~w + _ONE)
                        w ^= b
                        v = (wi << 6) + popcnt(b - _ONE)
                        dv = deg[v]
                        if dv > d:
                            sc2[wi] |= b
                        if dv > maxdeg:
                            maxdeg = dv
                            u_p = v
                if maxdeg <= d:
                    for i in range(dlen):
                        out_del[i] = dstack[i]
                    return FOUND, dlen
                # rule 3: forced inclusion
                fired = False
                for wi in range(nw):
                    w = alive[wi] & cand[wi]
                    while w:
                        b = w & (~w + _ONE)
                        w ^= b
                        v = (wi << 6) + popcnt(b - _ONE)
                        if deg[v] > d + t:
                            trail_len, dlen = _op_delete(comp, nw, alive, deg, trail, trail_len, dstack, dlen, v)
                            t -= 1
                            fired = True
                            break
                    if fired:
                        break
                if fired:
                    continue
                # rule 4: safe exclusion (closed neighborhood within degree d)
                for wi in range(nw):
                    w = alive[wi] & cand[wi]
                    while w:
                        b = w & (~w + _ONE)
                        w ^= b
                        v = (wi << 6) + popcnt(b - _ONE)
                        if deg[v] <= d:
                            hit = _ZERO
                            for xi in range(nw):
                                hit |= comp[v, xi] & sc2[xi]
                            if hit == _ZERO:
                                trail_len = _op_unc(cand, trail, trail_len, v)
                                fired = True
                                break
                    if fired:
                        break
                if fired:
                    continue
                if use_bound:
                    pb = partition_bound_bits(comp, nw, alive, cand, d, piv, dlt, sc1)
                    if pb > t:
                        failed = True
                        break
                    # survivor budget: every non-candidate keeps <= d of its
                    # neighbors, so the cheapest survivors must fit the slack
                    for wi in range(nw):
                        sc1[wi] = alive[wi] & ~cand[wi]
                    na = bs_count(sc1)
                    if na > 0:
                        budget = np.int64(d) * na
                        for wi in range(nw):
                            w = sc1[wi]
                            while w:
                                b = w & (~w + _ONE)
                                w ^= b
                                a = (wi << 6) + popcnt(b - _ONE)
                                budget -= and2_count(comp[a], sc1)
                        need_out = (bs_count(alive) - t) - na
                        if budget < 0:
                            failed = True
                            break
                        if need_out > 0:
                            over = False
                            for dv in range(na + 1):
                                piv[dv] = 0
                            for wi in range(nw):
                                w = alive[wi] & cand[wi]
                                while w:
                                    b = w & (~w + _ONE)
                                    w ^= b
                                    x = (wi << 6) + popcnt(b - _ONE)
                                    piv[and2_count(comp[x], sc1)] += 1
                            taken = np.int64(0)
                            cost = np.int64(0)
                            for dv in range(na + 1):
                                c = piv[dv]
                                if taken + c > need_out:
                                    c = need_out - taken
                                cost += c * dv
                                taken += c
                                if taken == need_out:
                                    break
                            if taken < need_out or cost > budget:
                                failed = True
                                break
                break
            if failed:
                trail_len, dlen = _unwind(comp, nw, alive, cand, deg, trail, fr[0], trail_len, dlen)
                t = fr[2]
                if depth == 0:
                    return NO, 0
                depth -= 1
                mode_enter = False
                continue
            # branch on a maximum-degree vertex
            fr[1] = trail_len  # rules mark
            fr[3] = t          # t after rules
            nout = np.int64(0)
            for xi in range(nw):
                nout += popcnt(comp[u_p, xi] & alive[xi] & ~cand[xi])
            in_c = bs_get(cand, u_p)
            vl = vlists[depth]
            s = 0
            for xi in range(nw):
                w = comp[u_p, xi] & alive[xi] & cand[xi]
                while w:
                    b = w & (~w + _ONE)
                    w ^= b
                    vl[s] = (xi << 6) + popcnt(b - _ONE)
                    s += 1
            # descending current degree, smallest id on ties
            for i in range(1, s):
                x = vl[i]
                dx = deg[x]
                j = i - 1
                while j >= 0 and (deg[vl[j]] < dx or (deg[vl[j]] == dx and vl[j] > x)):
                    vl[j + 1] = vl[j]
                    j -= 1
                vl[j + 1] = x
            if in_c == 1:
                b_val = d + 1 - nout
                nch = b_val + 1 if b_val >= 1 else 1
            else:
                b_val = d - nout
                nch = b_val + 1
            fr[4] = u_p
            fr[5] = in_c
            fr[6] = b_val
            fr[7] = s
            fr[8] = 0
            fr[9] = nch
            stats[S_BRANCHES] += 1
            stats[S_CHILDREN] += nch
            if nch > stats[S_MAXFAN]:
                stats[S_MAXFAN] = nch
            if depth + 1 > stats[S_MAXDEPTH]:
                stats[S_MAXDEPTH] = depth + 1
            mode_enter = False
        else:
            fr = frames[depth]
            trail_len, dlen = _unwind(comp, nw, alive, cand, deg, trail, fr[1], trail_len, dlen)
            t = fr[3]
            ci = fr[8]
            if ci >= fr[9]:
                trail_len, dlen = _unwind(comp, nw, alive, cand, deg, trail, fr[0], trail_len, dlen)
                t = fr[2]
                if depth == 0:
                    return NO, 0
                depth -= 1
                continue
            fr[8] = ci + 1
            u_p = fr[4]
            b_val = fr[6]
            s = fr[7]
            vl = vlists[depth]
            if fr[5] == 1:
                if b_val < 1 or ci == 0:
                    trail_len, dlen = _op_delete(comp, nw, alive, deg, trail, trail_len, dstack, dlen, u_p)
                    t -= 1
                elif ci <= b_val - 1:
                    trail_len = _op_unc(cand, trail, trail_len, u_p)
                    for j in range(ci - 1):
                        trail_len = _op_unc(cand, trail, trail_len, vl[j])
                    trail_len, dlen = _op_delete(comp, nw, alive, deg, trail, trail_len, dstack, dlen, vl[ci - 1])
                    t -= 1
                else:
                    trail_len = _op_unc(cand, trail, trail_len, u_p)
                    for j in range(b_val - 1):
                        trail_len = _op_unc(cand, trail, trail_len, vl[j])
                    for j in range(b_val - 1, s):
                        trail_len, dlen = _op_delete(comp, nw, alive, deg, trail, trail_len, dstack, dlen, vl[j])
                    t -= s - b_val + 1
            else:
                if ci < b_val:
                    for j in range(ci):
                        trail_len = _op_unc(cand, trail, trail_len, vl[j])
                    trail_len, dlen = _op_delete(comp, nw, alive, deg, trail, trail_len, dstack, dlen, vl[ci])
                    t -= 1
                else:
                    for j in range(b_val):
                        trail_len = _op_unc(cand, trail, trail_len, vl[j])
                    for j in range(b_val, s):
                        trail_len, dlen = _op_delete(comp, nw, alive, deg, trail, trail_len, dstack, dlen, vl[j])
                    t -= s - b_val
            depth += 1
            mode_enter = True


@maybe_njit
def _build_comp(adj, n, nw, act, comp):
    for v in range(n):
        if bs_get(act, v) == 1:
            for wi in range(nw):
                comp[v, wi] = (~adj[v, wi]) & act[wi]
            bs_clear(comp[v], v)


@maybe_njit
def _init_deg(comp, n, nw, act, deg):
    for v in range(n):
        if bs_get(act, v) == 1:
            c = np.int64(0)
            for wi in range(nw):
                c += popcnt(comp[v, wi] & act[wi])
            deg[v] = c


@maybe_njit
def dbdd_standalone(comp, n, nw, act, candmask, d, t, use_bound, node_budget, deadline, stats, out_del):
    """One self-contained decision call on a prebuilt complement matrix."""
    alive = np.empty(nw, np.uint64)
    candb = np.empty(nw, np.uint64)
    for wi in range(nw):
        alive[wi] = act[wi]
        candb[wi] = candmask[wi] & act[wi]
    deg = np.zeros(n, np.int64)
    _init_deg(comp, n, nw, act, deg)
    trail = np.empty((2 * n + 8, 2), np.int64)
    frames = np.zeros((n + 3, 10), np.int64)
    vlists = np.zeros((n + 3, n), np.int32)
    dstack = np.empty(n + 1, np.int64)
    sc1 = np.empty(nw, np.uint64)
    sc2 = np.empty(nw, np.uint64)
    piv = np.empty(n + 1, np.int64)
    dlt = np.empty(n + 1, np.int64)
    cc = bs_count(candb)
    tt = t
    if tt > cc:
        tt = cc
    stats[S_CALLS] += 1
    return dbdd_run(comp, n, nw, alive, candb, deg, d, tt, use_bound,
                    node_budget, deadline, stats, trail, frames, vlists,
                    dstack, out_del, sc1, sc2, piv, dlt)


# ---------------------------------------------------------------------------
# one anchored subproblem: cone reduction, budgeted whole-cone decision,
# then the parameterized subset enumeration


@maybe_njit
def _eval_subset(adj, n, nw, act, seeds, ns, seedbits, n1mask, svec, slen, k, p,
                 full_rules, use_bound, deadline, stats,
                 comp, alive, candb, deg, trail, frames, vlists, dstack, out_del,
                 sc1, sc2, piv, dlt, adj2, act2, out_wit):
    """Evaluate one anchor subset. Codes: FOUND / OUT_OF_TIME / 2 keep going / 3 prune subtree."""
    d = k - 1
    if full_rules:
        anchor = np.empty(ns + slen, np.int64)
        for i in range(ns):
            anchor[i] = seeds[i]
        for j in range(slen):
            anchor[ns + j] = svec[j]
        if anchor_budget_prune(adj, act, n, nw, anchor, ns + slen, k, p) == 1:
            return 3, 0
        if anchor_survives(adj, act, nw, anchor, ns + slen, k, p) == 0:
            return 3, 0
    # a subset too small to reach p cannot host the dual call (children can)
    ub_vs = slen
    for wi in range(nw):
        ub_vs += popcnt(act[wi] & (seedbits[wi] | n1mask[wi]))
    if ub_vs < p:
        return 2, 0
    for wi in range(nw):
        act2[wi] = act[wi] & (seedbits[wi] | n1mask[wi])
    for j in range(slen):
        bs_set(act2, svec[j])
    for v in range(n):
        if bs_get(act2, v) == 1:
            for wi in range(nw):
                adj2[v, wi] = adj[v, wi]
    if anchored_reduce(adj2, act2, n, nw, seeds, ns, svec, slen, k, p, full_rules) == 0:
        return 2, 0
    vs = bs_count(act2)
    t = vs - p
    if t < 0:
        return 2, 0
    for wi in range(nw):
        candb[wi] = act2[wi] & n1mask[wi]
    cc = bs_count(candb)
    if t > cc:
        t = cc
    _build_comp(adj2, n, nw, act2, comp)
    for i in range(ns):
        if and2_count(comp[seeds[i]], act2) > d + t:
            return 2, 0
    for j in range(slen):
        if and2_count(comp[svec[j]], act2) > d + t:
            return 2, 0
    for wi in range(nw):
        alive[wi] = act2[wi]
    _init_deg(comp, n, nw, act2, deg)
    stats[S_CALLS] += 1
    st, cnt = dbdd_run(comp, n, nw, alive, candb, deg, d, t, use_bound,
                       -1, deadline, stats, trail, frames, vlists, dstack,
                       out_del, sc1, sc2, piv, dlt)
    if st == FOUND:
        for i in range(cnt):
            bs_clear(act2, out_del[i])
        wn = 0
        for wi in range(nw):
            w = act2[wi]
            while w:
                b = w & (~w + _ONE)
                w ^= b
                out_wit[wn] = (wi << 6) + popcnt(b - _ONE)
                wn += 1
        return FOUND, wn
    if st == OUT_OF_TIME:
        return OUT_OF_TIME, 0
    return 2, 0


@maybe_njit
def solve_anchor(adj, n, nw, seeds, ns, n1mask_in, n2cand, n2len,
                 k, p, slimit, full_rules, use_bound,
                 cone_budget, senum_limit, deadline, stats, out_wit):
    """Search one anchored cone for a k-plex of size >= p containing the seeds.

    ``adj`` is the induced cone adjacency (mutated). Returns (status, count)
    with the witness in out_wit[:count] (cone-local ids) on FOUND.
    """
    act = np.zeros(nw, np.uint64)
    for v in range(n):
        bs_set(act, v)
    empty_s = np.empty(0, np.int32)
    if anchored_reduce(adj, act, n, nw, seeds, ns, empty_s, 0, k, p, full_rules) == 0:
        return NO, 0
    d = k - 1
    n1mask = np.empty(nw, np.uint64)
    for wi in range(nw):
        n1mask[wi] = n1mask_in[wi] & act[wi]
    cands = np.empty(max(n2len, 1), np.int32)
    ncand = 0
    for i in range(n2len):
        if bs_get(act, n2cand[i]) == 1:
            cands[ncand] = n2cand[i]
            ncand += 1
    seedbits = np.zeros(nw, np.uint64)
    for i in range(ns):
        bs_set(seedbits, seeds[i])
    # shared workspaces
    comp = np.zeros((n, nw), np.uint64)
    alive = np.empty(nw, np.uint64)
    candb = np.empty(nw, np.uint64)
    deg = np.zeros(n, np.int64)
    trail = np.empty((2 * n + 8, 2), np.int64)
    frames = np.zeros((n + 3, 10), np.int64)
    vlists = np.zeros((n + 3, n), np.int32)
    dstack = np.empty(n + 1, np.int64)
    out_del = np.empty(n + 1, np.int64)
    sc1 = np.empty(nw, np.uint64)
    sc2 = np.empty(nw, np.uint64)
    piv = np.empty(n + 1, np.int64)
    dlt = np.empty(n + 1, np.int64)

    # projected enumeration size decides how hard to lean on the cone search
    lim = slimit if slimit < ncand else ncand
    proj = 1.0
    binom = 1.0
    for j in range(1, lim + 1):
        binom = binom * (ncand - j + 1) / j
        proj += binom
        if proj > 1e15:
            break
    budget = cone_budget
    if budget != 0 and proj > senum_limit:
        budget = -1
    if budget != 0 and (proj > 64.0 or budget < 0):
        vs = bs_count(act)
        t_cone = vs - p
        if t_cone < 0:
            return NO, 0
        _build_comp(adj, n, nw, act, comp)
        feasible = True
        for i in range(ns):
            if and2_count(comp[seeds[i]], act) > d + t_cone:
                feasible = False
        if not feasible:
            return NO, 0
        for wi in range(nw):
            alive[wi] = act[wi]
            candb[wi] = act[wi] & ~seedbits[wi]
        cc = bs_count(candb)
        if t_cone > cc:
            t_cone = cc
        _init_deg(comp, n, nw, act, deg)
        stats[S_CALLS] += 1
        st, cnt = dbdd_run(comp, n, nw, alive, candb, deg, d, t_cone, use_bound,
                           budget, deadline, stats, trail, frames, vlists,
                           dstack, out_del, sc1, sc2, piv, dlt)
        if st == FOUND:
            for i in range(cnt):
                bs_clear(act, out_del[i])
            wn = 0
            for wi in range(nw):
                w = act[wi]
                while w:
                    b = w & (~w + _ONE)
                    w ^= b
                    out_wit[wn] = (wi << 6) + popcnt(b - _ONE)
                    wn += 1
            return FOUND, wn
        if st == NO:
            return NO, 0
        if st == OUT_OF_TIME:
            return OUT_OF_TIME, 0
        # out of budget: fall back to subset enumeration

    adj2 = np.empty((n, nw), np.uint64)
    act2 = np.empty(nw, np.uint64)
    svec = np.empty(slimit + 2, np.int32)
    code, wn = _eval_subset(adj, n, nw, act, seeds, ns, seedbits, n1mask, svec, 0,
                            k, p, full_rules, use_bound, deadline, stats,
                            comp, alive, candb, deg, trail, frames, vlists, dstack,
                            out_del, sc1, sc2, piv, dlt, adj2, act2, out_wit)
    if code == FOUND or code == OUT_OF_TIME:
        return code, wn
    if code == 3:
        return NO, 0
    if slimit == 0 or ncand == 0:
        return NO, 0
    sel = np.empty(slimit + 2, np.int32)
    nxt = np.empty(slimit + 2, np.int64)
    sp = 0
    nxt[0] = 0
    tick = 0
    while sp >= 0:
        tick += 1
        if tick >= 256:
            tick = 0
            if deadline > 0.0 and wall_clock() > deadline:
                return OUT_OF_TIME, 0
        if sp >= slimit or nxt[sp] >= ncand:
            sp -= 1
            continue
        j = nxt[sp]
        nxt[sp] = j + 1
        sel[sp] = cands[j]
        for q in range(sp + 1):
            svec[q] = sel[q]
        code, wn = _eval_subset(adj, n, nw, act, seeds, ns, seedbits, n1mask, svec, sp + 1,
                                k, p, full_rules, use_bound, deadline, stats,
                                comp, alive, candb, deg, trail, frames, vlists, dstack,
                                out_del, sc1, sc2, piv, dlt, adj2, act2, out_wit)
        if code == FOUND or code == OUT_OF_TIME:
            return code, wn
        if code == 2:
            sp += 1
            nxt[sp] = j + 1
    return NO, 0
