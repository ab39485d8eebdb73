"""Simple undirected graphs and elementary transformations."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are stored as a sorted tuple of ``(u, v)`` pairs with ``u < v``.
    Self-loops are never stored; the DRESS solver adds them implicitly.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        norm = set()
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((u, v) if u < v else (v, u))
        if len(norm) != len(self.edges):
            raise ValueError("duplicate edges")
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], name: Optional[str] = None) -> "Graph":
        """Build a graph, silently merging duplicate edges."""
        uniq = {(min(u, v), max(u, v)) for u, v in edges}
        return cls(n, tuple(uniq), name)

    @classmethod
    def from_adjacency(cls, adj: np.ndarray, name: Optional[str] = None) -> "Graph":
        adj = np.asarray(adj, dtype=bool)
        if adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if (adj != adj.T).any() or adj.diagonal().any():
            raise ValueError("adjacency must be symmetric with zero diagonal")
        us, vs = np.nonzero(np.triu(adj, 1))
        return cls(adj.shape[0], tuple(zip(us.tolist(), vs.tolist())), name)

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        if self.edges:
            e = np.asarray(self.edges)
            a[e[:, 0], e[:, 1]] = True
            a[e[:, 1], e[:, 0]] = True
        return a

    def neighbors(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        for row in nbrs:
            row.sort()
        return nbrs

    def closed_neighborhood(self, u: int) -> list[int]:
        return sorted(self.neighbors()[u] + [u])

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def with_name(self, name: str) -> "Graph":
        return Graph(self.n, self.edges, name)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.m}>"


def induced_delete(g: Graph, s: Iterable[int]) -> Graph:
    """Induced subgraph on ``V \\ s``; survivors keep their relative order."""
    s = set(s)
    for x in s:
        if not 0 <= x < g.n:
            raise IndexError(f"vertex {x} out of range for n={g.n}")
    keep = [v for v in range(g.n) if v not in s]
    index = {v: i for i, v in enumerate(keep)}
    edges = tuple((index[u], index[v]) for u, v in g.edges if u in index and v in index)
    return Graph(len(keep), edges)


def complement(g: Graph) -> Graph:
    present = set(g.edges)
    edges = tuple(e for e in combinations(range(g.n), 2) if e not in present)
    name = f"complement({g.name})" if g.name else None
    return Graph(g.n, edges, name)


def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel vertex ``u`` as ``perm[u]``."""
    perm = [int(p) for p in perm]
    if len(perm) != g.n or sorted(perm) != list(range(g.n)):
        raise ValueError("perm must be a bijection on 0..n-1")
    return Graph(g.n, tuple((perm[u], perm[v]) for u, v in g.edges), g.name)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, tuple(edges))


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Box product; vertex ``(a, b)`` is numbered ``a * h.n + b``."""
    edges = []
    for a in range(g.n):
        for u, v in h.edges:
            edges.append((a * h.n + u, a * h.n + v))
    for b in range(h.n):
        for u, v in g.edges:
            edges.append((u * h.n + b, v * h.n + b))
    return Graph(g.n * h.n, tuple(edges))


def srg_parameters(g: Graph) -> Optional[tuple[int, int, int, int]]:
    """Return ``(n, d, lambda, mu)`` if ``g`` is strongly regular, else None.

    Both an adjacent and a non-adjacent pair must exist, so complete and
    empty graphs are rejected.
    """
    if g.n < 3:
        return None
    a = g.adjacency().astype(np.int64)
    deg = a.sum(axis=1)
    if (deg != deg[0]).any():
        return None
    common = a @ a
    iu = np.triu_indices(g.n, 1)
    adj_pairs = a[iu].astype(bool)
    if adj_pairs.all() or not adj_pairs.any():
        return None
    lam = np.unique(common[iu][adj_pairs])
    mu = np.unique(common[iu][~adj_pairs])
    if len(lam) != 1 or len(mu) != 1:
        return None
    return (g.n, int(deg[0]), int(lam[0]), int(mu[0]))
