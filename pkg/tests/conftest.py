import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from kplexer import gnp, instances  # noqa: E402

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")

_cache = {}


def get_instance(name: str):
    """Benchmark graph by name: generated when possible, else loaded from data/."""
    if name in _cache:
        return _cache[name]
    if name in instances.BUILDERS:
        g = instances.build(name)
    else:
        path = os.path.join(DATA_DIR, f"{name}.clq")
        if not os.path.exists(path):
            return None
        from kplexer import parse_graph

        g = parse_graph(path, "dimacs")
    _cache[name] = g
    return g


@pytest.fixture(scope="session")
def hamming6_4():
    return get_instance("hamming6-4")


@pytest.fixture(scope="session")
def johnson8_4_4():
    return get_instance("johnson8-4-4")


@pytest.fixture(scope="session")
def mann_a27():
    return get_instance("MANN_a27")


@pytest.fixture(scope="session")
def cfat500_2():
    return get_instance("c-fat500-2")


def random_graphs(count, sizes=(4, 14), probs=(0.2, 0.5, 0.8), seed0=0):
    """Deterministic stream of small G(n, p) test graphs."""
    out = []
    i = 0
    while len(out) < count:
        n = sizes[0] + (i % (sizes[1] - sizes[0] + 1))
        p = probs[i % len(probs)]
        out.append(gnp(n, p, seed0 + 7919 * i))
        i += 1
    return out
