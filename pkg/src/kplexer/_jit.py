"""Numba/JIT glue.

Hot kernels in :mod:`kplexer.kernels` are written as plain nopython-compatible
functions over numpy arrays and compiled with ``numba.njit`` when available.
Setting the environment variable ``KPLEXER_JIT=0`` (before import) selects the
interpreted fallback path: the very same functions run as ordinary Python.
That path is two to three orders of magnitude slower and exists for debugging,
for environments without numba, and for ``benchmarks/backend_bench.py``.
"""

from __future__ import annotations

import os
import time

_flag = os.environ.get("KPLEXER_JIT", "1").strip().lower()
_want_jit = _flag not in ("0", "false", "no", "off")

if _want_jit:
    try:
        import numba
        from numba import njit as _njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

USE_JIT = _want_jit and HAVE_NUMBA


def maybe_njit(func):
    """Compile ``func`` with numba when the JIT path is enabled."""
    if USE_JIT:
        return _njit(cache=True)(func)
    return func


if USE_JIT:
    from numba import objmode

    @_njit(cache=True)
    def wall_clock():
        with objmode(t="float64"):
            t = time.time()
        return t

else:

    def wall_clock():
        return time.time()
