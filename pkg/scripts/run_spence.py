#!/usr/bin/env python3
"""Collision scan, margins and rounding stability on the Spence SRG files.

Expects ``srg_<n>_<d>_<lambda>_<mu>.g6`` files in DATA_DIR (see
``convert_adjacency.py`` for turning published adjacency matrices into
graph6). Reports go to OUT_DIR as JSON, one file per family and kind.

    python scripts/run_spence.py data/spence out/spence [--max-graphs 500]
"""

import argparse
import logging
import time
from pathlib import Path

from deltadress.bench import emit_report, fingerprint_all, margin_analysis, rounding_stability, scan_family
from deltadress.delta import DeltaConfig
from deltadress.families import SPENCE_FAMILIES, spence_filename
from deltadress.graph import srg_parameters
from deltadress.graph6 import load_family


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("data_dir", type=Path)
    ap.add_argument("out_dir", type=Path)
    ap.add_argument("--max-graphs", type=int, default=None, help="skip families larger than this")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    cfg = DeltaConfig(k=1, workers=args.threads)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for params, expected in SPENCE_FAMILIES.items():
        path = args.data_dir / spence_filename(params)
        if not path.exists():
            logging.info("missing %s", path.name)
            continue
        fam = load_family(path)
        if args.max_graphs and len(fam) > args.max_graphs:
            logging.info("skipping %s (%d graphs)", path.name, len(fam))
            continue
        bad = [i + 1 for i, g in enumerate(fam.graphs) if srg_parameters(g) != params]
        if len(fam) != expected or bad:
            logging.warning("%s: %d graphs (expected %d), wrong parameters at %s", path.name, len(fam), expected, bad)

        t0 = time.perf_counter()
        results = fingerprint_all(fam.graphs, cfg)
        scan = scan_family(fam.graphs, cfg, escalate_to=2, family=path.stem, results=results)
        exclude = [tuple(c.members) for c in scan.collisions if len(c.members) == 2]
        try:
            margins = margin_analysis(fam.graphs, cfg, exclude=exclude, family=path.stem, results=results)
        except ValueError as err:
            logging.warning("%s: no margin (%s)", path.stem, err)
            margins = None
        rounding = rounding_stability(fam.graphs, cfg, family=path.stem, results=results)
        for kind, rep in (("scan", scan), ("margins", margins), ("rounding", rounding)):
            if rep is not None:
                emit_report(rep, "json", str(args.out_dir / f"{path.stem}.{kind}.json"))
        groups = ", ".join(
            "{" + ",".join(f"G{m}" for m in c.members) + "}" + f"->k={c.resolved_at}" for c in scan.collisions
        )
        logging.info(
            "%s: %d graphs, %d unique%s, margin %s, rounding %s, %.1fs",
            path.stem,
            scan.graphs,
            scan.unique,
            f" [{groups}]" if groups else "",
            "n/a" if margins is None else f"{margins.min_linf:.3e} (ratio {margins.ratio:.0f})",
            sorted(set(rounding.unique_by_digits.values())),
            time.perf_counter() - t0,
        )


if __name__ == "__main__":
    main()
