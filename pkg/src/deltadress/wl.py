"""Weisfeiler-Leman reference distinguishers.

Three refinements are provided:

* ``1wl``: colour refinement on vertices.
* ``owl<k>``: oblivious k-WL on ordered k-tuples; one neighbour multiset
  per position.
* ``fwl<k>``: folklore k-WL; a single multiset over ``w`` of the k-vector of
  colours obtained by substituting ``w`` at each position.

FWL(k) has the power of oblivious (k+1)-WL, so the classical "3-WL" that
fails on Rook/Shrikhande is ``owl3`` (= ``fwl2``) and "3-FWL" is ``fwl3``.

Two graphs are refined side by side with one shared colour dictionary: at
every round the signatures of both graphs are ranked together, so colour ids
mean the same thing in both.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional

import numpy as np

from .graph import Graph, srg_parameters

DEFAULT_TUPLE_CAP = 10**8
_CHUNK_ELEMENTS = 4_000_000


class WLMemoryError(MemoryError):
    pass


class Outcome(str, Enum):
    DISTINGUISHED = "DISTINGUISHED"
    INDISTINGUISHABLE = "INDISTINGUISHABLE"


@dataclass(frozen=True)
class WLMethod:
    kind: str  # "1wl" | "oblivious" | "fwl"
    k: int = 1

    def __post_init__(self):
        if self.kind not in ("1wl", "oblivious", "fwl"):
            raise ValueError(f"unknown WL kind {self.kind!r}")
        if self.kind == "1wl" and self.k != 1:
            raise ValueError("1wl has arity 1")
        if not 1 <= self.k <= 3:
            raise ValueError(f"arity must be in 1..3, got {self.k}")

    @classmethod
    def parse(cls, text: str) -> "WLMethod":
        t = text.strip().lower().replace("-", "").replace("_", "")
        if t in ("1wl", "wl1", "colorrefinement", "cr"):
            return cls("1wl")
        for prefix, kind in (("fwl", "fwl"), ("owl", "oblivious"), ("oblivious", "oblivious")):
            if t.startswith(prefix) and t[len(prefix):].isdigit():
                return cls(kind, int(t[len(prefix):]))
        raise ValueError(f"unknown WL method {text!r}; use 1wl, owl2, owl3, fwl2 or fwl3")

    def __str__(self) -> str:
        return {"1wl": "1wl", "oblivious": f"owl{self.k}", "fwl": f"fwl{self.k}"}[self.kind]


@dataclass
class WLResult:
    outcome: Outcome
    method: WLMethod
    rounds: int
    colors: int
    histograms: tuple[dict[int, int], dict[int, int]]

    @property
    def distinguished(self) -> bool:
        return self.outcome is Outcome.DISTINGUISHED


def _atomic_types(adj: np.ndarray, k: int) -> np.ndarray:
    """Isomorphism type of each ordered k-tuple as a base-3 code.

    For each position pair ``i < j``: 2 if equal, 1 if adjacent, else 0.
    """
    n = adj.shape[0]
    idx = np.indices((n,) * k)
    code = np.zeros((n,) * k, dtype=np.int64)
    eye = np.eye(n, dtype=bool)
    for i, j in combinations(range(k), 2):
        ti, tj = idx[i], idx[j]
        code = code * 3 + np.where(eye[ti, tj], 2, adj[ti, tj].astype(np.int64))
    return code


def _substitutions(colors: np.ndarray, i: int) -> np.ndarray:
    """View ``P[t_1..t_k, w] = colors[t with position i replaced by w]``."""
    k = colors.ndim
    n = colors.shape[0]
    moved = np.expand_dims(np.moveaxis(colors, i, -1), i)
    return np.broadcast_to(moved, (n,) * k + (n,))


def _tuple_signatures(colors: np.ndarray, method: WLMethod, ncolors: int) -> np.ndarray:
    """Rows ``[old colour, payload...]``, one per tuple in C order."""
    k = colors.ndim
    n = colors.shape[0]
    if method.kind == "fwl" and ncolors ** k >= 2**63:
        raise WLMemoryError(f"{ncolors} colours overflow the {k}-vector encoding")
    width = n if method.kind == "fwl" else k * n
    out = np.empty((n**k, 1 + width), dtype=np.int64)
    out[:, 0] = colors.ravel()
    subs = [_substitutions(colors, i) for i in range(k)]
    step = max(1, _CHUNK_ELEMENTS // max(1, n ** k))
    per_first = n ** (k - 1)
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        rows = slice(lo * per_first, hi * per_first)
        if method.kind == "fwl":
            code = np.zeros((hi - lo,) + (n,) * k, dtype=np.int64)
            for p in subs:
                code = code * ncolors + p[lo:hi]
            code.sort(axis=-1)
            out[rows, 1:] = code.reshape(-1, n)
        else:
            for i, p in enumerate(subs):
                block = np.sort(p[lo:hi], axis=-1)
                out[rows, 1 + i * n : 1 + (i + 1) * n] = block.reshape(-1, n)
    return out


def _vertex_signatures(colors: np.ndarray, adj: np.ndarray, ncolors: int) -> np.ndarray:
    counts = adj.astype(np.int64) @ np.eye(ncolors, dtype=np.int64)[colors]
    return np.column_stack([colors, counts])


def _refine(graphs: list[Graph], method: WLMethod, tuple_cap: int):
    """Refine all graphs jointly to stability.

    Returns the per-graph colour arrays, number of refining rounds, and total
    number of colours.
    """
    adjs = [g.adjacency() for g in graphs]
    k = method.k
    for g in graphs:
        if g.n**k > tuple_cap:
            raise WLMemoryError(f"tuple table {g.n}^{k} = {g.n**k} exceeds the cap of {tuple_cap}")
    if method.kind == "1wl":
        colors = [np.zeros(g.n, dtype=np.int64) for g in graphs]
    else:
        colors = [_atomic_types(a, k) for a in adjs]
    # dense ids for the initial colouring
    flat = np.concatenate([c.ravel() for c in colors])
    _, inv = np.unique(flat, return_inverse=True)
    colors = _split(inv, colors)
    ncolors = int(inv.max()) + 1 if len(inv) else 0

    n_max = max(g.n for g in graphs)
    cap = max(1, n_max * n_max)
    rounds = 0
    while True:
        if method.kind == "1wl":
            sigs = [_vertex_signatures(c, a, ncolors) for c, a in zip(colors, adjs)]
        else:
            sigs = [_tuple_signatures(c, method, ncolors) for c in colors]
        if len({s.shape[1] for s in sigs}) > 1:
            # differing vertex counts: payload widths cannot agree
            return colors, rounds, ncolors
        stacked = np.concatenate(sigs)
        _, inv = np.unique(stacked, axis=0, return_inverse=True)
        inv = inv.ravel()
        new_count = int(inv.max()) + 1 if len(inv) else 0
        if new_count == ncolors:
            return colors, rounds, ncolors
        rounds += 1
        if rounds > cap:
            raise RuntimeError(f"WL refinement exceeded {cap} rounds")
        colors = _split(inv, colors)
        ncolors = new_count


def _split(flat: np.ndarray, like: list[np.ndarray]) -> list[np.ndarray]:
    out, pos = [], 0
    for c in like:
        out.append(flat[pos : pos + c.size].reshape(c.shape).astype(np.int64))
        pos += c.size
    return out


def _histogram(c: np.ndarray) -> dict[int, int]:
    vals, counts = np.unique(c, return_counts=True)
    return dict(zip(vals.tolist(), counts.tolist()))


def wl_distinguish(
    g1: Graph,
    g2: Graph,
    method: "WLMethod | str" = "1wl",
    tuple_cap: int = DEFAULT_TUPLE_CAP,
) -> WLResult:
    if isinstance(method, str):
        method = WLMethod.parse(method)
    if g1.n == 0 or g2.n == 0:
        raise ValueError("WL comparison needs non-empty graphs")
    colors, rounds, ncolors = _refine([g1, g2], method, tuple_cap)
    h1, h2 = _histogram(colors[0]), _histogram(colors[1])
    outcome = Outcome.INDISTINGUISHABLE if h1 == h2 and g1.n == g2.n else Outcome.DISTINGUISHED
    return WLResult(outcome, method, rounds, ncolors, (h1, h2))


def color_refinement(g: Graph) -> tuple[np.ndarray, int]:
    """Stable 1-WL colouring of a single graph and the number of rounds."""
    colors, rounds, _ = _refine([g], WLMethod("1wl"), DEFAULT_TUPLE_CAP)
    return colors[0], rounds


def srg_1wl_check(g: Graph) -> bool:
    """True iff colour refinement leaves a strongly regular graph monochrome."""
    if srg_parameters(g) is None:
        raise ValueError(f"{g!r} is not strongly regular")
    colors, _ = color_refinement(g)
    return len(np.unique(colors)) == 1


def parse_method(text: Optional[str]) -> WLMethod:
    return WLMethod.parse(text or "1wl")
