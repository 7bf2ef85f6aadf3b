#!/usr/bin/env python3
"""Print chamber data for a space: vertex weights per degree, the degree
histogram, and the embedding degree from maximal chain counting.

Usage: python3 scripts/chamber_tables.py [p:4 gr:1,4 ...]
"""

import sys

from quivercoh import bott
from quivercoh.cli import parse_space


def main(argv):
    names = argv or ["p:4", "gr:1,4"]
    for name in names:
        space = parse_space(name)
        verts = bott.chamber_vertices(space)
        hist = [0] * (space.dim + 1)
        for _, d in verts:
            hist[d] += 1
        print(f"{name}  ({len(verts)} chambers, dim {space.dim})")
        for w, d in verts:
            print(f"  {d}  {','.join(str(c) for c in w)}")
        print(f"  histogram: {hist}")
        print(f"  embedding degree: {bott.hasse_degree(space)}")
        print()


if __name__ == "__main__":
    main(sys.argv[1:])
