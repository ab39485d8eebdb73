#!/usr/bin/env python3
"""Scan every generated hard family at k = 1 and print the separation table.

    python scripts/scan_generated.py [--k 1] [--escalate-to 2] [--report-dir out/]
"""

import argparse
import time
from pathlib import Path

from deltadress.bench import emit_report, scan_family
from deltadress.delta import DeltaConfig
from deltadress.families import GENERATED_FAMILIES, family


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--escalate-to", type=int, default=None)
    ap.add_argument("--report-dir", type=Path, default=None, help="write one JSON report per family")
    args = ap.parse_args()

    cfg = DeltaConfig(k=args.k)
    print(f"{'Family':45s} {'Graphs':>6s} {'Unique':>6s} {'Pairs':>6s} {'iters':>5s} {'secs':>6s}")
    total_g = total_u = total_p = 0
    for name in GENERATED_FAMILIES:
        t0 = time.perf_counter()
        rep = scan_family(family(name), cfg, escalate_to=args.escalate_to, family=name)
        secs = time.perf_counter() - t0
        total_g, total_u, total_p = total_g + rep.graphs, total_u + rep.unique, total_p + rep.pairs
        mark = "" if rep.separated else "  <- collision"
        print(f"{name:45s} {rep.graphs:6d} {rep.unique:6d} {rep.pairs:6d} {rep.max_iterations:5d} {secs:6.2f}{mark}")
        if args.report_dir:
            args.report_dir.mkdir(parents=True, exist_ok=True)
            slug = "".join(c if c.isalnum() else "_" for c in name).strip("_").lower()
            emit_report(rep, "json", str(args.report_dir / f"{slug}.json"))
    print(f"{'total':45s} {total_g:6d} {total_u:6d} {total_p:6d}")


if __name__ == "__main__":
    main()
