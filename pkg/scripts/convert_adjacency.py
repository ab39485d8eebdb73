#!/usr/bin/env python3
"""Convert adjacency-matrix text to a graph6 family file.

Input: square 0/1 matrices, one row per line (digits may be separated by
spaces), consecutive matrices separated by blank lines or by a change of
row length. Lines containing anything other than 0/1 digits and spaces are
ignored, which drops the headings found in typical catalogue pages.

    python scripts/convert_adjacency.py srg40.txt data/spence/srg_40_12_2_4.g6 --check 40,12,2,4
"""

import argparse
import sys

import numpy as np

from deltadress.graph import Graph, srg_parameters
from deltadress.graph6 import write_family


def matrices(lines):
    block = []
    for raw in lines:
        row = raw.replace(" ", "").strip()
        if row and set(row) <= {"0", "1"}:
            if block and len(row) != len(block[0]):
                yield block
                block = []
            block.append(row)
            if len(block) == len(row):
                yield block
                block = []
        elif block:
            yield block
            block = []
    if block:
        yield block


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("source")
    ap.add_argument("dest")
    ap.add_argument("--check", help="n,d,lambda,mu every graph must satisfy")
    args = ap.parse_args()

    with open(args.source, encoding="utf-8") as fh:
        blocks = list(matrices(fh))
    graphs = []
    for i, block in enumerate(blocks, 1):
        a = np.array([[c == "1" for c in row] for row in block])
        if a.shape[0] != a.shape[1] or (a != a.T).any() or a.diagonal().any():
            sys.exit(f"matrix {i} is not a simple undirected adjacency matrix")
        graphs.append(Graph.from_adjacency(a))
    if args.check:
        want = tuple(int(x) for x in args.check.split(","))
        bad = [i + 1 for i, g in enumerate(graphs) if srg_parameters(g) != want]
        if bad:
            sys.exit(f"graphs {bad} do not have parameters {want}")
    write_family(args.dest, graphs)
    print(f"wrote {len(graphs)} graphs to {args.dest}")


if __name__ == "__main__":
    main()
