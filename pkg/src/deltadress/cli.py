"""Command-line interface.

Inputs are graph6 files (``path.g6``, optionally ``path.g6#5`` for the 5th
graph), generator expressions (``gen:shrikhande``, ``gen:cfi:K5:twisted``)
or, for family commands, built-in families (``fam:miyazaki``).

Exit codes: 0 success (including NOT-SEPARATED), 2 input error,
3 computation error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .bench import emit_report, margin_analysis, rounding_stability, scan_family
from .delta import DEFAULT_TAU, DeltaConfig, dump_fingerprint, delta_fingerprint, escalate
from .dress import ConvergenceError, SolverConfig
from .families import GENERATED_FAMILIES, family, find_family
from .generators import GeneratorError, generate, parse_spec
from .graph import Graph
from .graph6 import Graph6Error, encode_graph6, load_family
from .wl import WLMemoryError, WLMethod, wl_distinguish

log = logging.getLogger("deltadress")

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE = 0, 2, 3


class InputError(Exception):
    pass


def load_graph(text: str, skip_bad: bool = False) -> Graph:
    if text.startswith("gen:"):
        out = generate(parse_spec(text))
        if isinstance(out, tuple):
            return out[0]
        return out
    path, _, index = text.partition("#")
    fam = load_family(path, skip_bad=skip_bad)
    if not fam.graphs:
        raise InputError(f"{path}: no graphs")
    i = int(index) if index else 1
    if not 1 <= i <= len(fam.graphs):
        raise InputError(f"{path}: graph index {i} out of range 1..{len(fam.graphs)}")
    return fam.graphs[i - 1]


def load_graphs(inputs: Sequence[str], skip_bad: bool = False) -> tuple[str, list[Graph]]:
    """A family from one file, one ``fam:`` name, or several graph inputs."""
    if len(inputs) == 1 and inputs[0].startswith("fam:"):
        name = find_family(inputs[0][4:])
        return name, family(name)
    if len(inputs) == 1 and not inputs[0].startswith("gen:"):
        fam = load_family(inputs[0], skip_bad=skip_bad)
        return fam.name, fam.graphs
    graphs = []
    for text in inputs:
        if text.startswith("gen:"):
            out = generate(parse_spec(text))
            graphs.extend(out if isinstance(out, tuple) else [out])
        else:
            graphs.append(load_graph(text, skip_bad))
    return "adhoc", graphs


def _solver(args) -> SolverConfig:
    return SolverConfig(tol=args.tol, max_iter=args.max_iter)


def _delta(args, retain: bool = False) -> DeltaConfig:
    return DeltaConfig(k=args.k, solver=_solver(args), retain_matrix=retain, workers=args.threads)


def cmd_fingerprint(args) -> int:
    g = load_graph(args.input, args.skip_bad)
    res = delta_fingerprint(g, _delta(args))
    fp, _, dg = res
    if args.out:
        if args.emit == "bin":
            with open(args.out, "wb") as fh:
                fh.write(dump_fingerprint(res))
        else:
            doc = {
                "k": fp.k,
                "n": fp.n,
                "m": g.m,
                "epsilon": fp.epsilon,
                "total_length": fp.total_length,
                "max_iterations": fp.max_iterations,
                "row_lengths": fp.row_lengths.tolist(),
                "values": fp.values.tolist(),
                "histogram_sha256": dg.histogram_hex,
                "multiset_sha256": dg.multiset_hex,
            }
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=1)
                fh.write("\n")
    print(f"graph           {g.name or args.input}")
    print(f"n               {g.n}")
    print(f"m               {g.m}")
    print(f"k               {fp.k}")
    print(f"total_length    {fp.total_length}")
    print(f"max_iterations  {fp.max_iterations}")
    if fp.total_length:
        print(f"min/max value   {fp.values[0]:.10f} / {fp.values[-1]:.10f}")
    print(f"histogram_sha256 {dg.histogram_hex}")
    print(f"multiset_sha256  {dg.multiset_hex}")
    return EXIT_OK


def cmd_compare(args) -> int:
    a, b = load_graph(args.a, args.skip_bad), load_graph(args.b, args.skip_bad)
    top = args.k if args.escalate_to is None else args.escalate_to
    esc = escalate(a, b, _delta(args), k_max=top, tau=args.tau)
    for k, cmp in esc.history:
        dist = "length mismatch" if cmp.linf is None else f"{cmp.linf:.6e}"
        print(f"k={k}: {cmp.verdict.value} (Linf {dist})")
    if esc.exhausted:
        print(f"NOT-SEPARATED up to k={esc.history[-1][0]} (Linf {esc.comparison.linf})")
    else:
        dist = "length mismatch" if esc.comparison.linf is None else f"{esc.comparison.linf:.6e}"
        print(f"SEPARATED at k={esc.k} (Linf {dist})")
    return EXIT_OK


def _write_report(report, args) -> None:
    text = emit_report(report, args.format, args.report)
    if not args.report:
        sys.stdout.write(text)


def cmd_scan(args) -> int:
    name, graphs = load_graphs(args.inputs, args.skip_bad)
    rep = scan_family(graphs, _delta(args), escalate_to=args.escalate_to, tau=args.tau, family=name)
    print(
        f"{rep.family}: {rep.graphs} graphs, {rep.unique} unique, {rep.pairs} pairs, k={rep.k}",
        file=sys.stderr,
    )
    for c in rep.collisions:
        state = "EXHAUSTED" if c.exhausted else f"resolved at k={c.resolved_at}"
        print(f"  collision {{{', '.join(f'G{m}' for m in c.members)}}}: {state}", file=sys.stderr)
    _write_report(rep, args)
    return EXIT_OK


def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected I,J got {text!r}") from None
    return (i, j)


def cmd_margins(args) -> int:
    name, graphs = load_graphs(args.inputs, args.skip_bad)
    rep = margin_analysis(
        graphs,
        _delta(args),
        sample_threshold=args.sample_threshold,
        sample_pairs=args.sample,
        seed=args.seed,
        exclude=args.exclude or (),
        exclude_collisions=args.exclude_collisions,
        tau=args.tau,
        family=name,
    )
    _write_report(rep, args)
    return EXIT_OK


def _digits(text: str) -> list[int]:
    if "-" in text:
        lo, hi = text.split("-")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def cmd_rounding(args) -> int:
    name, graphs = load_graphs(args.inputs, args.skip_bad)
    rep = rounding_stability(graphs, _delta(args), digits=args.digits, family=name)
    _write_report(rep, args)
    return EXIT_OK


def cmd_wl(args) -> int:
    a, b = load_graph(args.a, args.skip_bad), load_graph(args.b, args.skip_bad)
    methods = ["1wl", "owl2", "fwl2", "owl3", "fwl3"] if args.method == "all" else [args.method]
    for m in methods:
        res = wl_distinguish(a, b, WLMethod.parse(m), tuple_cap=args.max_tuples)
        print(f"{str(res.method):5s} {res.outcome.value} (rounds {res.rounds}, colours {res.colors})")
    return EXIT_OK


def cmd_generate(args) -> int:
    out = generate(parse_spec(args.spec))
    graphs = list(out) if isinstance(out, tuple) else [out]
    lines = b"".join(encode_graph6(g) + b"\n" for g in graphs)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(lines)
        for g in graphs:
            print(f"{g.name}: n={g.n} m={g.m}", file=sys.stderr)
    else:
        sys.stdout.write(lines.decode("ascii"))
    return EXIT_OK


def cmd_families(args) -> int:
    for name in GENERATED_FAMILIES:
        gs = family(name)
        print(f"{name}: {len(gs)} graphs ({', '.join(g.name or '?' for g in gs[:4])}{', ...' if len(gs) > 4 else ''})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="deltadress", description="DRESS and Delta^k-DRESS graph fingerprints")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--k", type=int, default=1, help="deletion depth (default 1)")
    solver.add_argument("--tol", type=float, default=1e-6, help="convergence tolerance (default 1e-6)")
    solver.add_argument("--max-iter", type=int, default=100, help="iteration cap (default 100)")
    solver.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    solver.add_argument("--skip-bad", action="store_true", help="skip malformed graph6 lines")

    tau = argparse.ArgumentParser(add_help=False)
    tau.add_argument("--tau", type=float, default=DEFAULT_TAU, help="equality tolerance (default 1e-5)")

    report = argparse.ArgumentParser(add_help=False)
    report.add_argument("--report", help="write report here instead of stdout")
    report.add_argument("--format", choices=("json", "csv"), default="json")

    s = sub.add_parser("fingerprint", parents=[solver], help="compute one fingerprint")
    s.add_argument("input")
    s.add_argument("--out", help="write the fingerprint container here")
    s.add_argument("--emit", choices=("json", "bin"), default="bin")
    s.set_defaults(func=cmd_fingerprint)

    s = sub.add_parser("compare", parents=[solver, tau], help="compare two graphs")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--escalate-to", type=int, default=None, help="highest depth to try")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("scan", parents=[solver, tau, report], help="within-family collision scan")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--escalate-to", type=int, default=None)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("margins", parents=[solver, tau, report], help="minimum pairwise Linf margin")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--sample", type=int, default=2000, help="pairs sampled above the threshold")
    s.add_argument("--sample-threshold", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--exclude", type=_pair, action="append", help="1-based pair I,J to leave out")
    s.add_argument("--exclude-collisions", action="store_true", help="drop pairs within tau")
    s.set_defaults(func=cmd_margins)

    s = sub.add_parser("rounding", parents=[solver, report], help="rounding-stability sweep")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--digits", type=_digits, default=list(range(6, 15)), help="e.g. 6-14 or 6,8,10")
    s.set_defaults(func=cmd_rounding)

    s = sub.add_parser("wl", help="Weisfeiler-Leman comparison")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--method", default="1wl", help="1wl, owl2, owl3, fwl2, fwl3 or all")
    s.add_argument("--max-tuples", type=int, default=10**8)
    s.add_argument("--skip-bad", action="store_true")
    s.set_defaults(func=cmd_wl)

    s = sub.add_parser("generate", help="write a generated graph as graph6")
    s.add_argument("spec")
    s.add_argument("--out")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("families", help="list built-in families")
    s.set_defaults(func=cmd_families)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ConvergenceError, WLMemoryError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_COMPUTE
    except (OSError, Graph6Error, GeneratorError, InputError, KeyError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
