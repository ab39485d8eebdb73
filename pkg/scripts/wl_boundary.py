#!/usr/bin/env python3
"""Run every WL variant on the reference pairs and show where each one breaks.

    python scripts/wl_boundary.py [--max-tuples 100000000]
"""

import argparse
import time

from deltadress.delta import compare, delta_fingerprint
from deltadress.generators import from_text
from deltadress.wl import WLMemoryError, wl_distinguish

PAIRS = [
    ("prism", "kbip:3:3"),
    ("union(C3,C3)", "C6"),
    ("rook:4", "shrikhande"),
    ("petersen", "prism:5"),
    ("cfi:C4", "cfi:C4:twisted"),
    ("cfi:K4", "cfi:K4:twisted"),
    ("cfi:K5", "cfi:K5:twisted"),
]
METHODS = ("1wl", "owl2", "fwl2", "owl3", "fwl3")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-tuples", type=int, default=10**8)
    args = ap.parse_args()
    print(f"{'pair':32s} {'Delta1':>6s} " + " ".join(f"{m:>5s}" for m in METHODS))
    for a_text, b_text in PAIRS:
        a, b = from_text(a_text), from_text(b_text)
        d1 = compare(delta_fingerprint(a).fingerprint, delta_fingerprint(b).fingerprint)
        cells = []
        for m in METHODS:
            t0 = time.perf_counter()
            try:
                cells.append("yes" if wl_distinguish(a, b, m, args.max_tuples).distinguished else "no")
            except WLMemoryError:
                cells.append("cap")
            if time.perf_counter() - t0 > 60:
                cells[-1] += "*"
        print(f"{a_text + ' / ' + b_text:32s} {'yes' if d1.separated else 'no':>6s} " + " ".join(f"{c:>5s}" for c in cells))


if __name__ == "__main__":
    main()
