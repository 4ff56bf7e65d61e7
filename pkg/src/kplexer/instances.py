"""Constructors for the small public clique/k-plex benchmark families.

The classic 2nd-DIMACS instances used by the benchmark harness are defined
mathematically, so they can be rebuilt bit-for-bit (up to isomorphism, which
is all the solver-facing quantities depend on):

* ``hamming{L}-{D}``: vertices are all length-L binary words, edges between
  words at Hamming distance >= D.
* ``johnson{L}-{W}-{D}``: vertices are the weight-W binary words of length L,
  edges between words at Hamming distance >= D.
* ``MANN_a{X}``: Mannino's clique translation of the Steiner-triple set
  covering instances. For each triple T of an STS over X points there are
  three (T, c) vertices (c in T), plus one vertex per point. All pairs are
  adjacent except (T,c)-(T,c') for the same triple and (T,c)-q when q == c.
  X = 9, 27, 81 use the affine-geometry STS (AG(d,3) lines); their published
  sizes (n, m) = (45, 918), (378, 70551), (3321, ...) match this build.
* ``c-fat{n}-{c}``: ring of q = floor(n / (c ln n)) blocks, vertex i in block
  i mod q, edges within a block and between ring-adjacent blocks. Reproduces
  the published edge counts of all seven c-fat instances exactly.

Not reconstructible: the C{n}.{p} random-graph instances (e.g. C125.9) were
drawn with an unpublished seed, so only the original file is authoritative.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .graph import Graph, from_edge_array


def hamming_graph(length: int, min_dist: int) -> Graph:
    words = np.arange(1 << length, dtype=np.int64)
    return _distance_graph(words, min_dist)


def johnson_graph(length: int, weight: int, min_dist: int) -> Graph:
    words = np.array([w for w in range(1 << length) if bin(w).count("1") == weight], dtype=np.int64)
    return _distance_graph(words, min_dist)


def _distance_graph(words: np.ndarray, min_dist: int) -> Graph:
    n = words.shape[0]
    raw = []
    for i in range(n):
        xor = words[i] ^ words[i + 1 :]
        dist = np.array([bin(int(x)).count("1") for x in xor])
        for j in np.nonzero(dist >= min_dist)[0]:
            raw.append((i, i + 1 + j))
    return from_edge_array(n, np.asarray(raw, dtype=np.int64))


def _affine_steiner_triples(dim: int) -> list[tuple[int, int, int]]:
    """Lines of AG(dim, 3): all {x, y, z} with x + y + z = 0 coordinatewise mod 3."""
    npoints = 3**dim
    pts = [tuple((p // 3**i) % 3 for i in range(dim)) for p in range(npoints)]
    index = {pt: i for i, pt in enumerate(pts)}
    triples = set()
    for a in range(npoints):
        for b in range(a + 1, npoints):
            c = tuple((-pts[a][i] - pts[b][i]) % 3 for i in range(dim))
            ci = index[c]
            if ci > b:
                triples.add((a, b, ci))
    return sorted(triples)


def mann_graph(x: int) -> Graph:
    """MANN_a{x} for x in {9, 27, 81} (x = 3^d points of an affine STS)."""
    dim = round(math.log(x, 3))
    if 3**dim != x:
        raise ValueError("mann_graph supports x = 9, 27, 81")
    triples = _affine_steiner_triples(dim)
    verts: list[tuple[int, int]] = []  # (triple index, point) row vertices
    for t, tri in enumerate(triples):
        for c in tri:
            verts.append((t, c))
    ncols = x
    nrows = len(verts)
    n = nrows + ncols
    # non-edges: same-triple pairs; (t, c) vs column vertex c
    forbidden = set()
    for t in range(len(triples)):
        base = 3 * t
        forbidden.update({(base, base + 1), (base, base + 2), (base + 1, base + 2)})
    for i, (_, c) in enumerate(verts):
        forbidden.add((i, nrows + c))
    raw = [(u, v) for u, v in combinations(range(n), 2) if (u, v) not in forbidden]
    return from_edge_array(n, np.asarray(raw, dtype=np.int64))


def cfat_graph(n: int, c: int) -> Graph:
    q = int(n / (c * math.log(n)))
    block = np.arange(n) % q
    raw = []
    for i in range(n):
        for j in range(i + 1, n):
            d = (block[i] - block[j]) % q
            if d == 0 or d == 1 or d == q - 1:
                raw.append((i, j))
    return from_edge_array(n, np.asarray(raw, dtype=np.int64))


def write_dimacs(g: Graph, path: str, name: str = "") -> None:
    with open(path, "w") as fh:
        if name:
            fh.write(f"c {name}\n")
        fh.write(f"p edge {g.n} {g.m}\n")
        for u, v in g.edges():
            fh.write(f"e {u + 1} {v + 1}\n")


BUILDERS = {
    "hamming6-4": lambda: hamming_graph(6, 4),
    "hamming6-2": lambda: hamming_graph(6, 2),
    "johnson8-4-4": lambda: johnson_graph(8, 4, 4),
    "MANN_a9": lambda: mann_graph(9),
    "MANN_a27": lambda: mann_graph(27),
    "c-fat200-1": lambda: cfat_graph(200, 1),
    "c-fat200-2": lambda: cfat_graph(200, 2),
    "c-fat200-5": lambda: cfat_graph(200, 5),
    "c-fat500-1": lambda: cfat_graph(500, 1),
    "c-fat500-2": lambda: cfat_graph(500, 2),
    "c-fat500-5": lambda: cfat_graph(500, 5),
    "c-fat500-10": lambda: cfat_graph(500, 10),
}


def build(name: str) -> Graph:
    try:
        return BUILDERS[name]()
    except KeyError:
        raise KeyError(f"no generator for instance {name!r}") from None
