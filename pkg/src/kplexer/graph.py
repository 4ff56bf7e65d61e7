"""Compact immutable undirected simple-graph representation.

Vertices are dense 0-based integers internally; original file labels are kept
in a side table for output. Adjacency is CSR (``indptr``/``indices``) with each
neighbor list strictly sorted. Vertex sets at the API boundary are sorted
``int32`` numpy arrays; the solver kernels use uint64 bitsets internally.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass

import numpy as np

# Beyond this many vertices a dense complement / adjacency bit matrix is not
# materialized (memory grows quadratically).
DENSE_LIMIT = 8192


class GraphFormatError(ValueError):
    """Raised for malformed input files (carries a line number when known)."""


@dataclass(frozen=True)
class Graph:
    n: int
    indptr: np.ndarray  # int64[n+1]
    indices: np.ndarray  # int32[2m], sorted within each row
    labels: np.ndarray  # original vertex identifiers, int64[n]

    @property
    def m(self) -> int:
        return int(self.indices.shape[0]) // 2

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        if v < 0 or v >= self.n:
            raise IndexError(f"vertex {v} out of range")
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < row.shape[0] and row[i] == v)

    def degrees(self) -> np.ndarray:
        return (self.indptr[1:] - self.indptr[:-1]).astype(np.int64)

    def edges(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v."""
        us = np.repeat(np.arange(self.n, dtype=np.int32), np.diff(self.indptr))
        mask = us < self.indices
        return np.stack([us[mask], self.indices[mask]], axis=1)

    def validate(self) -> None:
        """Assert the structural invariants (simple, symmetric, sorted)."""
        assert self.indptr.shape[0] == self.n + 1
        for v in range(self.n):
            row = self.indices[self.indptr[v] : self.indptr[v + 1]]
            if row.shape[0]:
                assert row.min() >= 0 and row.max() < self.n
                assert np.all(np.diff(row) > 0), f"row {v} not strictly sorted"
                assert not np.any(row == v), f"self-loop at {v}"
        es = self.edges()
        for u, v in es:
            assert self.has_edge(int(v), int(u)), f"asymmetric edge {u},{v}"
        assert 2 * es.shape[0] == self.indices.shape[0]

    def bit_matrix(self) -> np.ndarray:
        """Adjacency as a uint64 bit matrix (rows = vertices)."""
        if self.n > DENSE_LIMIT:
            raise ValueError(f"bit matrix limited to {DENSE_LIMIT} vertices (n={self.n})")
        nw = (self.n + 63) >> 6
        mat = np.zeros((max(self.n, 1), nw), dtype=np.uint64)
        for v in range(self.n):
            row = self.neighbors(v)
            np.bitwise_or.at(mat[v], row >> 6, np.uint64(1) << (row.astype(np.uint64) & np.uint64(63)))
        return mat


@dataclass(frozen=True)
class Subproblem:
    """An anchored decision subproblem: find a k-plex of size >= p in ``graph``
    that contains every anchor vertex, extending only into ``candidates``."""

    graph: Graph
    anchor: np.ndarray
    candidates: np.ndarray
    p: int
    k: int

    def __post_init__(self):
        a = set(int(x) for x in self.anchor)
        c = set(int(x) for x in self.candidates)
        assert not (a & c), "anchor and candidates overlap"
        assert a | c == set(range(self.graph.n)), "anchor+candidates must cover the graph"


def from_edge_array(n: int, edges: np.ndarray, labels: np.ndarray | None = None) -> Graph:
    """Build a Graph from an array of (u, v) pairs over dense ids 0..n-1.

    Drops self-loops, deduplicates, and symmetrizes.
    """
    if labels is None:
        labels = np.arange(n, dtype=np.int64)
    if edges.size == 0:
        return Graph(n, np.zeros(n + 1, dtype=np.int64), np.empty(0, dtype=np.int32), labels)
    e = edges[edges[:, 0] != edges[:, 1]]
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    key = lo.astype(np.int64) * n + hi
    _, keep = np.unique(key, return_index=True)
    lo, hi = lo[keep], hi[keep]
    src = np.concatenate([lo, hi]).astype(np.int32)
    dst = np.concatenate([hi, lo]).astype(np.int32)
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    return Graph(n, indptr, dst, labels)


def _compact(raw_edges: list[tuple[int, int]]) -> tuple[int, np.ndarray, np.ndarray]:
    arr = np.asarray(raw_edges, dtype=np.int64).reshape(-1, 2)
    labels = np.unique(arr)
    n = labels.shape[0]
    dense = np.searchsorted(labels, arr)
    return n, dense, labels


def parse_edge_list(text: str) -> Graph:
    """Parse a whitespace-separated edge list ('#'/'%' lines are comments)."""
    raw: list[tuple[int, int]] = []
    for ln, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#") or s.startswith("%"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {ln}: expected two vertex ids, got {len(parts)} tokens")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"line {ln}: non-integer vertex id") from exc
        if abs(u) > 2**53 or abs(v) > 2**53:
            raise GraphFormatError(f"line {ln}: vertex id overflow")
        raw.append((u, v))
    if not raw:
        return Graph(0, np.zeros(1, dtype=np.int64), np.empty(0, dtype=np.int32), np.empty(0, dtype=np.int64))
    n, dense, labels = _compact(raw)
    return from_edge_array(n, dense, labels)


def parse_dimacs(text: str) -> Graph:
    """Parse a DIMACS .clq/.col file ('p edge n m' header, 'e u v' lines, 1-indexed)."""
    n = -1
    raw: list[tuple[int, int]] = []
    for ln, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s[0] == "c":
            continue
        parts = s.split()
        if parts[0] == "p":
            if len(parts) < 4:
                raise GraphFormatError(f"line {ln}: malformed problem line")
            try:
                n = int(parts[2])
            except ValueError as exc:
                raise GraphFormatError(f"line {ln}: bad vertex count") from exc
        elif parts[0] == "e":
            if len(parts) != 3:
                raise GraphFormatError(f"line {ln}: malformed edge line")
            if n < 0:
                raise GraphFormatError(f"line {ln}: edge before problem line")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise GraphFormatError(f"line {ln}: non-integer vertex id") from exc
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"line {ln}: vertex id out of range 1..{n}")
            raw.append((u - 1, v - 1))
        # other records (n, d, ...) are ignored
    if n < 0:
        raise GraphFormatError("missing 'p edge' problem line")
    edges = np.asarray(raw, dtype=np.int64).reshape(-1, 2)
    return from_edge_array(n, edges, labels=np.arange(1, n + 1, dtype=np.int64))


def parse_graph(source, fmt: str = "edge-list") -> Graph:
    """Parse ``source`` (path, text content, or stream) in the given format."""
    if hasattr(source, "read"):
        data = source.read()
        text = data.decode() if isinstance(data, bytes) else data
    elif isinstance(source, bytes):
        text = source.decode()
    elif isinstance(source, os.PathLike) or (isinstance(source, str) and "\n" not in source and os.path.exists(source)):
        with io.open(source, "r") as fh:
            text = fh.read()
    else:
        text = source
    if fmt in ("dimacs", "dimacs-clq"):
        g = parse_dimacs(text)
    elif fmt == "edge-list":
        g = parse_edge_list(text)
    else:
        raise ValueError(f"unknown graph format {fmt!r}")
    g.validate()
    return g


def induced_subgraph(g: Graph, s) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on vertex set ``s``; returns (subgraph, mapping to g's ids)."""
    ids = np.unique(np.asarray(list(s) if not isinstance(s, np.ndarray) else s, dtype=np.int64))
    if ids.size and (ids[0] < 0 or ids[-1] >= g.n):
        raise IndexError("vertex set out of range")
    inv = np.full(g.n, -1, dtype=np.int64)
    inv[ids] = np.arange(ids.shape[0])
    raw = []
    for new_u, u in enumerate(ids):
        for v in g.neighbors(int(u)):
            nv = inv[v]
            if nv >= 0 and nv > new_u:
                raw.append((new_u, nv))
    edges = np.asarray(raw, dtype=np.int64).reshape(-1, 2)
    sub = from_edge_array(ids.shape[0], edges, labels=g.labels[ids])
    return sub, ids


def complement(g: Graph) -> Graph:
    """Complement graph; intended for subproblem-sized graphs."""
    if g.n > DENSE_LIMIT:
        raise ValueError(f"complement limited to {DENSE_LIMIT} vertices (n={g.n})")
    raw = []
    for u in range(g.n):
        row = g.neighbors(u)
        mask = np.ones(g.n, dtype=bool)
        mask[row] = False
        mask[: u + 1] = False
        for v in np.nonzero(mask)[0]:
            raw.append((u, v))
    edges = np.asarray(raw, dtype=np.int64).reshape(-1, 2)
    return from_edge_array(g.n, edges, labels=g.labels.copy())


def two_hop_neighbors(g: Graph, v: int) -> np.ndarray:
    """N2(v): vertices at distance exactly two from v."""
    nb = g.neighbors(v)
    if nb.size == 0:
        return np.empty(0, dtype=np.int32)
    reach = np.unique(np.concatenate([g.neighbors(int(u)) for u in nb]))
    mask = np.ones(g.n, dtype=bool)
    mask[nb] = False
    mask[v] = False
    out = reach[mask[reach]]
    return out.astype(np.int32)


def edge_common_neighbors(g: Graph, e: tuple[int, int]) -> np.ndarray:
    """N(e) = N(u) ∩ N(v) for an edge e={u,v}."""
    u, v = e
    if not g.has_edge(u, v):
        raise ValueError(f"{e} is not an edge")
    return np.intersect1d(g.neighbors(u), g.neighbors(v)).astype(np.int32)


def edge_two_hop(g: Graph, e: tuple[int, int]) -> np.ndarray:
    """N2(e) = (N2(u) ∪ N2(v)) minus the edge endpoints and N(e)."""
    u, v = e
    common = edge_common_neighbors(g, e)
    reach = np.union1d(two_hop_neighbors(g, u), two_hop_neighbors(g, v))
    drop = np.ones(g.n, dtype=bool)
    drop[common] = False
    drop[[u, v]] = False
    return reach[drop[reach]].astype(np.int32)


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) test graph with a fixed seed (test-only helper)."""
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, k=1)
    pick = rng.random(iu[0].shape[0]) < p
    edges = np.stack([iu[0][pick], iu[1][pick]], axis=1).astype(np.int64)
    return from_edge_array(n, edges)
