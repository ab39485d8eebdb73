"""Vertex-deletion pooling of DRESS fingerprints, hashing and comparison."""

from __future__ import annotations

import hashlib
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, islice
from math import comb
from typing import Iterator, NamedTuple, Optional

import numpy as np

from .dress import ConvergenceError, SolverConfig, solve_adjacencies
from .graph import Graph

DEFAULT_TAU = 1e-5
BATCH_EDGES = 200_000


@dataclass(frozen=True)
class DeltaConfig:
    k: int = 1
    solver: SolverConfig = SolverConfig()
    retain_matrix: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"deletion depth must be non-negative, got {self.k}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def at_depth(self, k: int) -> "DeltaConfig":
        return DeltaConfig(k, self.solver, self.retain_matrix, self.workers)


@dataclass
class MultisetMatrix:
    """Ragged matrix of per-deletion sorted fingerprints.

    Row ``i`` belongs to the ``i``-th ``k``-subset in lexicographic order.
    """

    rows: list[np.ndarray]
    k: int
    n: int

    def subsets(self) -> Iterator[tuple[int, ...]]:
        return combinations(range(self.n), self.k)

    def row_lengths(self) -> np.ndarray:
        return np.array([len(r) for r in self.rows], dtype=np.int64)


@dataclass
class DeltaFingerprint:
    values: np.ndarray = field(repr=False)
    row_lengths: np.ndarray = field(repr=False)
    k: int
    n: int
    epsilon: float = 1e-6
    max_iterations: int = 0

    @property
    def total_length(self) -> int:
        return len(self.values)


@dataclass
class SparseHistogram:
    bins: np.ndarray
    counts: np.ndarray
    epsilon: float

    @property
    def entries(self) -> dict[int, int]:
        return dict(zip(self.bins.tolist(), self.counts.tolist()))

    def __len__(self) -> int:
        return len(self.bins)


@dataclass(frozen=True)
class FingerprintDigests:
    histogram_sha256: bytes
    multiset_sha256: bytes

    @property
    def histogram_hex(self) -> str:
        return self.histogram_sha256.hex()

    @property
    def multiset_hex(self) -> str:
        return self.multiset_sha256.hex()


class DeltaResult(NamedTuple):
    fingerprint: DeltaFingerprint
    matrix: Optional[MultisetMatrix]
    digests: FingerprintDigests


def _batches(adj: np.ndarray, k: int, deg: np.ndarray) -> Iterator[tuple[list, list[np.ndarray]]]:
    """Yield lists of deleted-subgraph adjacency matrices, lexicographic order."""
    n = adj.shape[0]
    per_graph = max(1, int(deg.sum()) // 2 + n)
    size = max(1, BATCH_EDGES // per_graph)
    subsets = combinations(range(n), k)
    while True:
        chunk = list(islice(subsets, size))
        if not chunk:
            return
        mats = []
        for s in chunk:
            keep = np.ones(n, dtype=bool)
            keep[list(s)] = False
            mats.append(adj[np.ix_(keep, keep)])
        yield chunk, mats


def _solve_chunk(job, solver: SolverConfig):
    chunk, mats = job
    try:
        raw = solve_adjacencies(mats, solver)
    except ConvergenceError as err:
        err.subset = chunk[err.index]
        err.args = (f"{err.args[0]} after deleting {err.subset}",)
        raise
    rows = [np.sort(vals[us != vs]) for us, vs, vals, _, _ in raw]
    return rows, max((r[3] for r in raw), default=0)


def delta_fingerprint(g: Graph, cfg: DeltaConfig = DeltaConfig()) -> DeltaResult:
    """Pool sorted DRESS fingerprints over all ``cfg.k``-vertex deletions.

    ``k = 0`` reduces to the plain DRESS fingerprint (a single row). Digests
    use ``cfg.solver.tol`` as the histogram bin width.
    """
    if cfg.k > g.n:
        raise ValueError(f"deletion depth {cfg.k} exceeds vertex count {g.n}")
    adj = g.adjacency()
    jobs = _batches(adj, cfg.k, adj.sum(axis=1))
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(lambda j: _solve_chunk(j, cfg.solver), jobs))
    else:
        results = [_solve_chunk(j, cfg.solver) for j in jobs]

    rows = [r for chunk_rows, _ in results for r in chunk_rows]
    iters = max((it for _, it in results), default=0)
    assert len(rows) == comb(g.n, cfg.k)
    lengths = np.array([len(r) for r in rows], dtype=np.int64)
    flat = np.sort(np.concatenate(rows)) if rows else np.zeros(0)
    fp = DeltaFingerprint(flat, lengths, cfg.k, g.n, cfg.solver.tol, iters)
    matrix = MultisetMatrix(rows, cfg.k, g.n) if cfg.retain_matrix else None
    return DeltaResult(fp, matrix, digests(fp, histogram(fp, fp.epsilon)))


def histogram(fp: DeltaFingerprint, epsilon: float = 1e-6) -> SparseHistogram:
    """Pooled histogram of ``floor(value / epsilon)``."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    binned = np.floor(fp.values / epsilon).astype(np.int64)
    bins, counts = np.unique(binned, return_counts=True)
    return SparseHistogram(bins, counts.astype(np.int64), float(epsilon))


def digests(fp: DeltaFingerprint, hist: SparseHistogram) -> FingerprintDigests:
    """SHA-256 of the histogram and of the raw sorted values.

    Histogram entries are hashed in bin order as big-endian ``uint64`` pairs
    ``(bin, count)``; values as big-endian IEEE-754 doubles.
    """
    h = hashlib.sha256()
    pairs = np.empty((len(hist.bins), 2), dtype=">u8")
    pairs[:, 0] = hist.bins
    pairs[:, 1] = hist.counts
    h.update(pairs.tobytes())
    m = hashlib.sha256(np.asarray(fp.values, dtype=">f8").tobytes())
    return FingerprintDigests(h.digest(), m.digest())


class Verdict(str, Enum):
    SEPARATED = "SEPARATED"
    EQUAL = "EQUAL"


class Comparison(NamedTuple):
    verdict: Verdict
    linf: Optional[float]

    @property
    def separated(self) -> bool:
        return self.verdict is Verdict.SEPARATED


def linf_distance(a: DeltaFingerprint, b: DeltaFingerprint) -> Optional[float]:
    """Max absolute difference of aligned sorted values; None if lengths differ."""
    if a.total_length != b.total_length:
        return None
    if a.total_length == 0:
        return 0.0
    return float(np.max(np.abs(a.values - b.values)))


def compare(a: DeltaFingerprint, b: DeltaFingerprint, tau: float = DEFAULT_TAU) -> Comparison:
    dist = linf_distance(a, b)
    if dist is None:
        return Comparison(Verdict.SEPARATED, None)
    return Comparison(Verdict.SEPARATED if dist > tau else Verdict.EQUAL, dist)


@dataclass
class Escalation:
    """Outcome of comparing two graphs at increasing deletion depth.

    ``k`` is the first separating depth, or None when exhausted at ``k_max``.
    """

    k: Optional[int]
    k_max: int
    comparison: Comparison
    first: DeltaResult
    second: DeltaResult
    history: list[tuple[int, Comparison]] = field(default_factory=list)

    @property
    def exhausted(self) -> bool:
        return self.k is None


def escalate(
    g1: Graph,
    g2: Graph,
    cfg: DeltaConfig = DeltaConfig(),
    k_max: int = 2,
    tau: float = DEFAULT_TAU,
) -> Escalation:
    if k_max < cfg.k:
        raise ValueError(f"k_max={k_max} is below the starting depth {cfg.k}")
    top = min(k_max, g1.n, g2.n)
    if top < cfg.k:
        raise ValueError(f"deletion depth {cfg.k} exceeds a vertex count")
    history = []
    for k in range(cfg.k, top + 1):
        at = cfg.at_depth(k)
        r1, r2 = delta_fingerprint(g1, at), delta_fingerprint(g2, at)
        cmp = compare(r1.fingerprint, r2.fingerprint, tau)
        history.append((k, cmp))
        if cmp.separated:
            return Escalation(k, k_max, cmp, r1, r2, history)
    return Escalation(None, k_max, cmp, r1, r2, history)


# container file ------------------------------------------------------------

MAGIC = b"DDFP"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sHHIIQQd")


def dump_fingerprint(result: DeltaResult) -> bytes:
    """Serialise a fingerprint; the layout is described in docs/formats.md."""
    fp, _, dg = result
    head = _HEADER.pack(MAGIC, FORMAT_VERSION, 0, fp.k, fp.n, len(fp.row_lengths), fp.total_length, fp.epsilon)
    return b"".join(
        [
            head,
            np.asarray(fp.row_lengths, dtype="<u4").tobytes(),
            np.asarray(fp.values, dtype="<f8").tobytes(),
            dg.histogram_hex.encode("ascii"),
            dg.multiset_hex.encode("ascii"),
        ]
    )


def load_fingerprint(data: bytes) -> tuple[DeltaFingerprint, FingerprintDigests]:
    if len(data) < _HEADER.size:
        raise ValueError("truncated fingerprint container")
    magic, version, _, k, n, rows, total, eps = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ValueError("not a fingerprint container (bad magic)")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported container version {version}")
    pos = _HEADER.size
    expect = pos + 4 * rows + 8 * total + 128
    if len(data) != expect:
        raise ValueError(f"container size {len(data)} != expected {expect}")
    lengths = np.frombuffer(data, dtype="<u4", count=rows, offset=pos).astype(np.int64)
    pos += 4 * rows
    values = np.frombuffer(data, dtype="<f8", count=total, offset=pos).astype(np.float64)
    pos += 8 * total
    hist_hex = data[pos : pos + 64].decode("ascii")
    ms_hex = data[pos + 64 : pos + 128].decode("ascii")
    if int(lengths.sum()) != total:
        raise ValueError("row lengths do not sum to the value count")
    fp = DeltaFingerprint(values, lengths, k, n, eps)
    return fp, FingerprintDigests(bytes.fromhex(hist_hex), bytes.fromhex(ms_hex))
