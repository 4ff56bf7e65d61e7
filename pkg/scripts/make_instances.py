#!/usr/bin/env python3
"""Write the reconstructible benchmark instances as DIMACS .clq files.

Usage: python scripts/make_instances.py [outdir]

The C{n}.{p} instances (C125.9, ...) cannot be regenerated: they are fixed
random draws whose seed was never published. Drop the original files into the
output directory by hand to include them in benchmark runs.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from kplexer import instances  # noqa: E402


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "data"
    os.makedirs(outdir, exist_ok=True)
    for name in sorted(instances.BUILDERS):
        path = os.path.join(outdir, f"{name}.clq")
        g = instances.build(name)
        instances.write_dimacs(g, path, name=name)
        print(f"{path}: n={g.n} m={g.m}")


if __name__ == "__main__":
    main()
