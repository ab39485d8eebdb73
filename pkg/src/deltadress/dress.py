"""The DRESS edge dynamics.

Every vertex gets an implicit self-loop. With ``N[u]`` the closed
neighbourhood and ``|u| = sqrt(sum_{x in N[u]} d_ux)``, one synchronous step is

    d_uv <- sum_{x in N[u] & N[v]} (d_ux + d_xv) / (|u| |v|)

applied to every loop and every edge at once. Iteration stops when the
L-infinity change of all augmented values drops below ``tol``.

All sums are accumulated with ``np.bincount`` over index arrays laid out in
ascending ``x`` order, so results are bit-for-bit reproducible and do not
depend on how many graphs are solved together in a batch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .graph import Graph


class ConvergenceError(RuntimeError):
    """DRESS did not reach the tolerance within ``max_iter`` steps."""

    def __init__(self, message: str, iterations: int = 0, residual: float = float("nan")):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual
        self.index: Optional[int] = None
        self.subset: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-6
    max_iter: int = 100
    init: float = 1.0

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.init > 0:
            raise ValueError(f"init must be positive, got {self.init}")


@dataclass
class EdgeValues:
    """Converged values on the loop-augmented edge set.

    ``us[i] <= vs[i]``; entries with ``us == vs`` are the loops. Augmented
    edges are listed in row-major order of the upper triangle.
    """

    graph: Graph
    us: np.ndarray
    vs: np.ndarray
    values: np.ndarray
    iterations: int
    final_residual: float

    @property
    def loop_mask(self) -> np.ndarray:
        return self.us == self.vs

    def loop_values(self) -> np.ndarray:
        return self.values[self.loop_mask]

    def edge_values(self) -> np.ndarray:
        """Non-loop values in the order of ``graph.edges``."""
        return self.values[~self.loop_mask]

    def value(self, u: int, v: int) -> float:
        u, v = min(u, v), max(u, v)
        hit = np.nonzero((self.us == u) & (self.vs == v))[0]
        if len(hit) == 0:
            raise KeyError((u, v))
        return float(self.values[hit[0]])


@dataclass(frozen=True)
class Fingerprint:
    values: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.values)


class _System:
    """Index arrays for one or more graphs laid side by side.

    The per-edge numerator is a bincount over ``tri_edge`` of
    ``d[tri_a] + d[tri_b]``; norms are a bincount over ``nrm_vertex`` of
    ``d[nrm_edge]``. Both index lists are sorted by (target, x).
    """

    def __init__(self, adjacencies: Sequence[np.ndarray]):
        us, vs, tri_edge, tri_a, tri_b, nrm_vertex, nrm_edge = ([] for _ in range(7))
        self.edge_offsets = [0]
        self.vertex_offsets = [0]
        v_off = 0
        e_off = 0
        for adj in adjacencies:
            n = adj.shape[0]
            adj = adj.astype(bool, copy=True)
            adj[np.diag_indices(n)] = True
            gu, gv = np.nonzero(np.triu(adj))
            m_aug = len(gu)
            eid = np.full((n, n), -1, dtype=np.int64)
            eid[gu, gv] = np.arange(m_aug)
            eid[gv, gu] = np.arange(m_aug)
            rows, xs = np.nonzero(adj[gu] & adj[gv])
            tri_edge.append(rows + e_off)
            tri_a.append(eid[gu[rows], xs] + e_off)
            tri_b.append(eid[xs, gv[rows]] + e_off)
            owner, xs = np.nonzero(adj)
            nrm_vertex.append(owner + v_off)
            nrm_edge.append(eid[owner, xs] + e_off)
            us.append(gu + v_off)
            vs.append(gv + v_off)
            v_off += n
            e_off += m_aug
            self.edge_offsets.append(e_off)
            self.vertex_offsets.append(v_off)

        def cat(parts):
            return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

        self.n_vertices = v_off
        self.n_edges = e_off
        self.us = cat(us)
        self.vs = cat(vs)
        self.tri_edge = cat(tri_edge)
        self.tri_a = cat(tri_a)
        self.tri_b = cat(tri_b)
        self.nrm_vertex = cat(nrm_vertex)
        self.nrm_edge = cat(nrm_edge)

    def step(self, d: np.ndarray) -> np.ndarray:
        sq = np.bincount(self.nrm_vertex, weights=d[self.nrm_edge], minlength=self.n_vertices)
        norm = np.sqrt(sq)
        num = np.bincount(self.tri_edge, weights=d[self.tri_a] + d[self.tri_b], minlength=self.n_edges)
        return num / (norm[self.us] * norm[self.vs])


def dress_step(g: Graph, d: np.ndarray) -> np.ndarray:
    """Apply one synchronous update to augmented values ``d`` of ``g``."""
    return _System([g.adjacency()]).step(np.asarray(d, dtype=np.float64))


def augmented_edges(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """The ``(us, vs)`` layout used by :func:`dress_converge` for ``g``."""
    adj = g.adjacency()
    adj[np.diag_indices(g.n)] = True
    return np.nonzero(np.triu(adj))


def solve_adjacencies(
    adjacencies: Sequence[np.ndarray],
    cfg: SolverConfig = SolverConfig(),
    init: Optional[Sequence[np.ndarray]] = None,
) -> list[tuple[np.ndarray, np.ndarray, np.ndarray, int, float]]:
    """Solve several graphs, given as boolean adjacency matrices, in one loop.

    Returns ``(us, vs, values, iterations, residual)`` per graph. Each graph
    stops updating once its own residual drops below ``cfg.tol``, so every
    result is bitwise identical to solving that graph alone. On failure the
    raised ConvergenceError carries the offending position as ``.index``.
    """
    if not len(adjacencies):
        return []
    sys_ = _System(adjacencies)
    offs = np.asarray(sys_.edge_offsets)
    sizes = np.diff(offs)
    if init is None:
        d = np.full(sys_.n_edges, cfg.init, dtype=np.float64)
    else:
        d = np.concatenate([np.asarray(x, dtype=np.float64).ravel() for x in init])
        if len(d) != sys_.n_edges or not (d > 0).all():
            raise ValueError("init must supply one positive value per augmented edge")

    count = len(adjacencies)
    edge_owner = np.repeat(np.arange(count), sizes)
    nonempty = sizes > 0
    active = nonempty.copy()
    iterations = np.zeros(count, dtype=np.int64)
    residual = np.zeros(count)
    starts = offs[:-1][nonempty]

    for _ in range(cfg.max_iter):
        if not active.any():
            break
        new = sys_.step(d)
        res = np.zeros(count)
        res[nonempty] = np.maximum.reduceat(np.abs(new - d), starts)
        d = np.where(active[edge_owner], new, d)
        iterations[active] += 1
        residual[active] = res[active]
        active &= ~(res < cfg.tol)

    if active.any():
        bad = int(np.nonzero(active)[0][0])
        err = ConvergenceError(
            f"DRESS did not converge within {cfg.max_iter} iterations "
            f"(residual {residual[bad]:.3e})",
            iterations=int(iterations[bad]),
            residual=float(residual[bad]),
        )
        err.index = bad
        raise err

    out = []
    for i in range(count):
        lo, hi = offs[i], offs[i + 1]
        v0 = sys_.vertex_offsets[i]
        out.append((sys_.us[lo:hi] - v0, sys_.vs[lo:hi] - v0, d[lo:hi].copy(), int(iterations[i]), float(residual[i])))
    return out


def dress_converge_many(
    graphs: Sequence[Graph],
    cfg: SolverConfig = SolverConfig(),
    init: Optional[Sequence[np.ndarray]] = None,
) -> list[EdgeValues]:
    graphs = list(graphs)
    try:
        raw = solve_adjacencies([g.adjacency() for g in graphs], cfg, init)
    except ConvergenceError as err:
        err.args = (f"{err.args[0]} on {graphs[err.index]!r}",)
        raise
    return [EdgeValues(g, *r) for g, r in zip(graphs, raw)]


def dress_converge(g: Graph, cfg: SolverConfig = SolverConfig(), init: Optional[np.ndarray] = None) -> EdgeValues:
    """Iterate DRESS on ``g`` to its fixed point.

    Raises ConvergenceError if the residual is still ``>= cfg.tol`` after
    ``cfg.max_iter`` steps. The empty graph returns no values and 0 iterations.
    """
    return dress_converge_many([g], cfg, None if init is None else [init])[0]


def extract_fingerprint(ev: EdgeValues) -> Fingerprint:
    return Fingerprint(np.sort(ev.edge_values()))


def dress_fingerprint(g: Graph, cfg: SolverConfig = SolverConfig()) -> Fingerprint:
    return extract_fingerprint(dress_converge(g, cfg))
