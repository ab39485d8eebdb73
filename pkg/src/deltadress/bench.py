"""Within-family experiments: collision scans, margins, rounding stability.

Graph indices in every report are 1-based positions in the family (file
order for graph6 input).
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .delta import DEFAULT_TAU, DeltaConfig, DeltaResult, compare, delta_fingerprint, linf_distance
from .graph import Graph

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
AUDIT_LIMIT = 500
DEFAULT_DIGITS = tuple(range(6, 15))


@dataclass
class CollisionGroup:
    members: list[int]
    k: int
    resolved_at: Optional[int] = None
    linf_at_resolution: Optional[float] = None

    @property
    def exhausted(self) -> bool:
        return self.resolved_at is None


@dataclass
class FamilyReport:
    family: str
    graphs: int
    unique: int
    pairs: int
    k: int
    collisions: list[CollisionGroup] = field(default_factory=list)
    max_iterations: int = 0
    audited: bool = True

    @property
    def separated(self) -> bool:
        return self.unique == self.graphs


@dataclass
class MarginReport:
    family: str
    graphs: int
    min_linf: float
    ratio: float
    method: str
    epsilon: float
    argmin: tuple[int, int]
    pairs_compared: int
    skipped_unequal_length: int
    excluded: list[tuple[int, int]] = field(default_factory=list)
    sample_size: Optional[int] = None
    seed: Optional[int] = None


@dataclass
class RoundingReport:
    family: str
    graphs: int
    unique_by_digits: dict[int, int]


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def fingerprint_all(graphs: Sequence[Graph], cfg: DeltaConfig) -> list[DeltaResult]:
    out = []
    for i, g in enumerate(graphs):
        out.append(delta_fingerprint(g, cfg))
        log.debug("fingerprinted %d/%d (%r)", i + 1, len(graphs), g)
    return out


def _collision_components(results: Sequence[DeltaResult], tau: float, audit: bool) -> list[list[int]]:
    n = len(results)
    dsu = _DisjointSet(n)
    fps = [r.fingerprint for r in results]

    def link(i: int, j: int) -> None:
        if dsu.find(i) != dsu.find(j) and not compare(fps[i], fps[j], tau).separated:
            dsu.union(i, j)

    if audit:
        by_len = defaultdict(list)
        for i, fp in enumerate(fps):
            by_len[fp.total_length].append(i)
        for idx in by_len.values():
            for i, j in combinations(idx, 2):
                link(i, j)
    else:
        for key in ("multiset_sha256", "histogram_sha256"):
            groups = defaultdict(list)
            for i, r in enumerate(results):
                groups[getattr(r.digests, key)].append(i)
            for idx in groups.values():
                for j in idx[1:]:
                    link(idx[0], j)

    comps = defaultdict(list)
    for i in range(n):
        comps[dsu.find(i)].append(i)
    return sorted(comps.values())


def _escalate_group(
    graphs: Sequence[Graph], members: list[int], cfg: DeltaConfig, k_max: int, tau: float
) -> CollisionGroup:
    group = CollisionGroup([m + 1 for m in members], cfg.k)
    for k in range(cfg.k + 1, k_max + 1):
        if k > min(graphs[m].n for m in members):
            break
        fps = [delta_fingerprint(graphs[m], cfg.at_depth(k)).fingerprint for m in members]
        cmps = [compare(a, b, tau) for a, b in combinations(fps, 2)]
        if all(c.separated for c in cmps):
            group.resolved_at = k
            dists = [c.linf for c in cmps if c.linf is not None]
            group.linf_at_resolution = min(dists) if dists else None
            break
    return group


def scan_family(
    graphs: Sequence[Graph],
    cfg: DeltaConfig = DeltaConfig(),
    escalate_to: Optional[int] = None,
    tau: float = DEFAULT_TAU,
    family: str = "family",
    results: Optional[Sequence[DeltaResult]] = None,
    audit_limit: int = AUDIT_LIMIT,
) -> FamilyReport:
    """Find tolerance-equal fingerprints within a family and escalate them.

    Families up to ``audit_limit`` graphs get a full pairwise tolerance audit;
    larger ones only compare graphs that share a multiset or histogram digest.
    """
    if not graphs:
        raise ValueError("scan_family needs a non-empty family")
    if results is None:
        results = fingerprint_all(graphs, cfg)
    audit = len(graphs) <= audit_limit
    comps = _collision_components(results, tau, audit)
    k_max = cfg.k if escalate_to is None else escalate_to
    collisions = [
        _escalate_group(graphs, c, cfg, k_max, tau) if k_max > cfg.k else CollisionGroup([m + 1 for m in c], cfg.k)
        for c in comps
        if len(c) > 1
    ]
    return FamilyReport(
        family=family,
        graphs=len(graphs),
        unique=len(comps),
        pairs=comb(len(graphs), 2),
        k=cfg.k,
        collisions=collisions,
        max_iterations=max(r.fingerprint.max_iterations for r in results),
        audited=audit,
    )


def _pair_from_index(idx: np.ndarray, g: int) -> tuple[np.ndarray, np.ndarray]:
    """Map linear indices over ``i < j`` pairs (row-major) to ``(i, j)``."""
    # rows shrink: row i holds g-1-i pairs
    starts = np.concatenate([[0], np.cumsum(np.arange(g - 1, 0, -1))])
    i = np.searchsorted(starts, idx, side="right") - 1
    j = idx - starts[i] + i + 1
    return i, j


def margin_analysis(
    graphs: Sequence[Graph],
    cfg: DeltaConfig = DeltaConfig(),
    sample_threshold: int = 200,
    sample_pairs: int = 2000,
    seed: int = 0,
    exclude: Iterable[tuple[int, int]] = (),
    exclude_collisions: bool = False,
    tau: float = DEFAULT_TAU,
    family: str = "family",
    results: Optional[Sequence[DeltaResult]] = None,
) -> MarginReport:
    """Minimum pairwise L-infinity distance between full sorted fingerprints.

    ``exclude`` lists 1-based pairs to leave out (known collisions);
    ``exclude_collisions`` additionally drops every pair within ``tau``.
    Pairs whose fingerprints differ in length are skipped and counted.
    Above ``sample_threshold`` graphs, ``sample_pairs`` distinct pairs are
    drawn with a seeded generator, which gives an upper bound on the minimum.
    """
    g = len(graphs)
    if results is None:
        results = fingerprint_all(graphs, cfg)
    fps = [r.fingerprint for r in results]
    excluded = {tuple(sorted(p)) for p in exclude}
    total = comb(g, 2)
    if total == 0:
        raise ValueError("margin analysis needs at least two graphs")

    sampled = g > sample_threshold
    if sampled:
        rng = np.random.default_rng(seed)
        idx = np.sort(rng.choice(total, size=min(sample_pairs, total), replace=False))
        ii, jj = _pair_from_index(idx, g)
        pairs = list(zip(ii.tolist(), jj.tolist()))
    else:
        pairs = list(combinations(range(g), 2))

    best, arg = np.inf, (0, 0)
    skipped = compared = 0
    dropped = []
    for i, j in pairs:
        key = (i + 1, j + 1)
        if key in excluded:
            dropped.append(key)
            continue
        dist = linf_distance(fps[i], fps[j])
        if dist is None:
            skipped += 1
            continue
        if exclude_collisions and dist <= tau:
            dropped.append(key)
            continue
        compared += 1
        if dist < best:
            best, arg = dist, key
    if compared == 0:
        raise ValueError("no comparable pair (all pairs differ in fingerprint length or were excluded)")
    eps = cfg.solver.tol
    return MarginReport(
        family=family,
        graphs=g,
        min_linf=float(best),
        ratio=float(best / eps),
        method="sampled" if sampled else "exact",
        epsilon=eps,
        argmin=arg,
        pairs_compared=compared,
        skipped_unequal_length=skipped,
        excluded=sorted(dropped),
        sample_size=len(pairs) if sampled else None,
        seed=seed if sampled else None,
    )


def round_half_away(values: np.ndarray, digits: int) -> np.ndarray:
    """Integers ``round(v * 10**digits)`` with ties away from zero."""
    scaled = np.asarray(values, dtype=np.float64) * 10.0**digits
    return (np.sign(scaled) * np.floor(np.abs(scaled) + 0.5)).astype(np.int64)


def rounding_stability(
    graphs: Sequence[Graph],
    cfg: DeltaConfig = DeltaConfig(),
    digits: Sequence[int] = DEFAULT_DIGITS,
    family: str = "family",
    results: Optional[Sequence[DeltaResult]] = None,
) -> RoundingReport:
    """Distinct fingerprints after rounding every value to ``d`` decimals."""
    if len(graphs) < 2:
        raise ValueError("rounding stability needs at least two graphs")
    if results is None:
        results = fingerprint_all(graphs, cfg)
    counts = {}
    for d in digits:
        keys = {round_half_away(r.fingerprint.values, d).tobytes() for r in results}
        counts[int(d)] = len(keys)
    return RoundingReport(family, len(graphs), counts)


# reports -------------------------------------------------------------------

Report = Union[FamilyReport, MarginReport, RoundingReport]


def report_to_dict(report: Report) -> dict:
    kind = {FamilyReport: "family", MarginReport: "margin", RoundingReport: "rounding"}[type(report)]
    body = asdict(report)
    if isinstance(report, RoundingReport):
        body["unique_by_digits"] = {str(k): v for k, v in report.unique_by_digits.items()}
    return {"schema": SCHEMA_VERSION, "kind": kind, **body}


def report_to_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(report, FamilyReport):
        w.writerow(["family", "graphs", "unique", "pairs", "k", "collisions", "resolved_at"])
        groups = ";".join("{" + ",".join(map(str, c.members)) + "}" for c in report.collisions)
        resolved = ";".join("EXHAUSTED" if c.exhausted else str(c.resolved_at) for c in report.collisions)
        w.writerow([report.family, report.graphs, report.unique, report.pairs, report.k, groups, resolved])
    elif isinstance(report, MarginReport):
        w.writerow(["family", "min_linf", "ratio", "method"])
        w.writerow([report.family, repr(report.min_linf), f"{report.ratio:.0f}", report.method])
    else:
        ds = list(report.unique_by_digits)
        w.writerow(["family", "N"] + [f"{d}d" for d in ds])
        w.writerow([report.family, report.graphs] + [report.unique_by_digits[d] for d in ds])
    return buf.getvalue()


def emit_report(report: Report, fmt: str = "json", path: Optional[str] = None) -> str:
    """Render ``report`` as JSON or CSV; write it to ``path`` when given."""
    if fmt == "json":
        text = json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        text = report_to_csv(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
