#!/usr/bin/env python3
"""Minimum pairwise L-infinity margins for the same-size generated pairs.

With ``--spence DIR`` the SRG families found there are added; the known
G5/G25 collision of SRG(40,12,2,4) is excluded from its margin.
"""

import argparse
from pathlib import Path

from deltadress.bench import margin_analysis
from deltadress.families import SPENCE_FAMILIES, SPENCE_MARGINS, REFERENCE_MARGINS, family, spence_filename
from deltadress.graph6 import load_family


def row(name, rep, reference):
    ref = f"{reference:.2e}" if reference else "-"
    print(f"{name:42s} {rep.graphs:6d} {rep.min_linf:12.4e} {rep.ratio:10.0f} {rep.method:8s} {ref:>9s}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--spence", type=Path, default=None, help="directory of srg_<n>_<d>_<l>_<m>.g6 files")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'Family':42s} {'Graphs':>6s} {'min Linf':>12s} {'ratio':>10s} {'method':8s} {'reference':>9s}")
    for name, ref in REFERENCE_MARGINS.items():
        row(name, margin_analysis(family(name), family=name), ref)
    if args.spence is None:
        return
    for params in SPENCE_FAMILIES:
        path = args.spence / spence_filename(params)
        if not path.exists():
            continue
        exclude = [(5, 25)] if params == (40, 12, 2, 4) else []
        rep = margin_analysis(load_family(path).graphs, exclude=exclude, seed=args.seed, family=path.stem)
        row("SRG{}".format(params), rep, SPENCE_MARGINS.get(params))


if __name__ == "__main__":
    main()
