"""Deterministic constructions for the hard benchmark families.

``parse_spec`` understands the mini-language used by the CLI::

    cycle:8   path:5   complete:5   kbip:3:3   prism  prism:5
    kneser:5:2   johnson:6:3   hamming:2:4   paley:13   rook:4
    shrikhande   petersen   rrg:20:3:7  (n, d, seed)
    union(cycle:4,cycle:4)   complement(petersen)
    cfi:K5   cfi:C4:twisted   cfi(petersen):twisted
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional, Union

import numpy as np

from .graph import Graph, cartesian_product, complement, disjoint_union

FAMILIES = (
    "cycle",
    "path",
    "complete",
    "complete_bipartite",
    "prism",
    "kneser",
    "johnson",
    "hamming",
    "paley",
    "rook",
    "shrikhande",
    "petersen",
    "disjoint_union",
    "complement_of",
    "cfi_pair",
    "random_regular",
)

_ALIASES = {
    "kbip": "complete_bipartite",
    "union": "disjoint_union",
    "complement": "complement_of",
    "cfi": "cfi_pair",
    "rrg": "random_regular",
    "K": "complete",
    "C": "cycle",
    "P": "path",
}

RANDOM_REGULAR_MAX_TRIES = 10_000


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    """A family name plus integer parameters.

    ``parts`` holds sub-specs for ``disjoint_union``, ``complement_of`` and
    ``cfi_pair`` (whose single part is the base graph). ``twisted`` selects
    the twisted member of a CFI pair when a single graph is wanted.
    """

    family: str
    params: tuple[int, ...] = ()
    seed: int = 0
    parts: tuple["GeneratorSpec", ...] = ()
    twisted: Optional[bool] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GeneratorError(f"unknown family {self.family!r}")
        if not 0 <= self.seed < 2**64:
            raise GeneratorError("seed must be a 64-bit unsigned integer")

    def __str__(self) -> str:
        return format_spec(self)


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, int(q**0.5) + 1))


def _need(spec: GeneratorSpec, count: int) -> tuple[int, ...]:
    if len(spec.params) != count:
        raise GeneratorError(f"{spec.family} takes {count} integer parameter(s), got {spec.params}")
    return spec.params


def cycle(n: int) -> Graph:
    if n < 3:
        raise GeneratorError("cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)), f"C{n}")


def path(n: int) -> Graph:
    if n < 1:
        raise GeneratorError("path needs n >= 1")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)), f"P{n}")


def complete(n: int) -> Graph:
    if n < 0:
        raise GeneratorError("complete needs n >= 0")
    return Graph(n, tuple(combinations(range(n), 2)), f"K{n}")


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise GeneratorError("part sizes must be non-negative")
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)), f"K{a},{b}")


def prism(k: int = 3) -> Graph:
    """C_k x K_2; ``prism(5)`` is the pentagonal prism."""
    g = cartesian_product(cycle(k), complete(2))
    return g.with_name("prism" if k == 3 else f"prism{k}")


def kneser(n: int, k: int) -> Graph:
    if not 1 <= k <= n:
        raise GeneratorError("kneser needs 1 <= k <= n")
    verts = [frozenset(c) for c in combinations(range(n), k)]
    edges = tuple((i, j) for i, j in combinations(range(len(verts)), 2) if not verts[i] & verts[j])
    return Graph(len(verts), edges, f"Kneser({n},{k})")


def johnson(n: int, k: int) -> Graph:
    if not 1 <= k <= n:
        raise GeneratorError("johnson needs 1 <= k <= n")
    verts = [frozenset(c) for c in combinations(range(n), k)]
    edges = tuple((i, j) for i, j in combinations(range(len(verts)), 2) if len(verts[i] & verts[j]) == k - 1)
    return Graph(len(verts), edges, f"J({n},{k})")


def hamming(d: int, q: int) -> Graph:
    if d < 1 or q < 2:
        raise GeneratorError("hamming needs d >= 1 and q >= 2")
    words = list(product(range(q), repeat=d))
    edges = tuple(
        (i, j)
        for i, j in combinations(range(len(words)), 2)
        if sum(a != b for a, b in zip(words[i], words[j])) == 1
    )
    return Graph(len(words), edges, f"H({d},{q})")


def paley(q: int) -> Graph:
    """Paley graph on Z_q; prime q = 1 (mod 4) only."""
    if not _is_prime(q) or q % 4 != 1:
        raise GeneratorError(f"paley needs a prime q = 1 (mod 4), got {q}")
    residues = {(x * x) % q for x in range(1, q)}
    edges = tuple((i, j) for i, j in combinations(range(q), 2) if (j - i) % q in residues)
    return Graph(q, edges, f"Paley({q})")


def rook(n: int) -> Graph:
    """Rook graph L_2(n) = K_n x K_n."""
    if n < 1:
        raise GeneratorError("rook needs n >= 1")
    return cartesian_product(complete(n), complete(n)).with_name(f"Rook({n})")


def shrikhande() -> Graph:
    """Cayley graph on Z_4 x Z_4; vertex ``(a, b)`` is ``4a + b``."""
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = []
    for a, b in product(range(4), repeat=2):
        for da, db in conn:
            u, v = 4 * a + b, 4 * ((a + da) % 4) + (b + db) % 4
            if u < v:
                edges.append((u, v))
    return Graph(16, tuple(edges), "Shrikhande")


def petersen() -> Graph:
    return kneser(5, 2).with_name("Petersen")


def random_regular(n: int, d: int, seed: int) -> Graph:
    """Uniform d-regular graph via the pairing model with rejection.

    Acceptance decays like exp(-(d*d - 1) / 4), so this is meant for small
    degrees such as the 3- and 4-regular benchmark graphs.
    """
    if not 0 <= d < n or (n * d) % 2:
        raise GeneratorError(f"random_regular needs 0 <= d < n and n*d even, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    points = np.repeat(np.arange(n), d)
    for _ in range(RANDOM_REGULAR_MAX_TRIES):
        pairs = rng.permutation(points).reshape(-1, 2)
        if (pairs[:, 0] == pairs[:, 1]).any():
            continue
        lo, hi = pairs.min(axis=1), pairs.max(axis=1)
        keys = lo * n + hi
        if len(np.unique(keys)) != len(keys):
            continue
        return Graph(n, tuple(zip(lo.tolist(), hi.tolist())), f"RRG({n},{d},seed={seed})")
    raise GeneratorError(f"random_regular({n}, {d}) exhausted {RANDOM_REGULAR_MAX_TRIES} pairings")


def cfi_pair(base: Graph) -> tuple[Graph, Graph]:
    """Cai-Fuerer-Immerman graphs over a connected base graph.

    A base vertex ``v`` of degree ``d`` becomes ``2**(d-1)`` gadget vertices,
    one per even-size subset ``S`` of its incident edges. For every base edge
    ``e = {v, w}``, gadget vertex ``(v, S)`` is joined to ``(w, T)`` iff
    ``e in S`` and ``e in T`` agree; the twisted graph inverts this rule on
    the last base edge. Over a cycle ``C_k`` this yields ``2C_k`` and ``C_2k``.

    Returns ``(untwisted, twisted)``.
    """
    if base.m == 0:
        raise GeneratorError("cfi_pair needs a base graph with at least one edge")
    if not _connected(base):
        raise GeneratorError("cfi_pair needs a connected base graph")

    nbrs = base.neighbors()
    gadget: list[tuple[int, frozenset]] = []
    for v in range(base.n):
        inc = [(min(v, w), max(v, w)) for w in nbrs[v]]
        for r in range(0, len(inc) + 1, 2):
            for sub in combinations(inc, r):
                gadget.append((v, frozenset(sub)))
    by_vertex: dict[int, list[int]] = {}
    for i, (v, _) in enumerate(gadget):
        by_vertex.setdefault(v, []).append(i)

    def build(twist_edge):
        edges = []
        for e in base.edges:
            v, w = e
            flip = e == twist_edge
            for i in by_vertex[v]:
                in_s = e in gadget[i][1]
                for j in by_vertex[w]:
                    if (in_s == (e in gadget[j][1])) != flip:
                        edges.append((i, j))
        return Graph(len(gadget), tuple(edges))

    label = base.name or f"n{base.n}m{base.m}"
    return (
        build(None).with_name(f"CFI({label})"),
        build(base.edges[-1]).with_name(f"CFI({label}):twisted"),
    )


def _connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    nbrs = g.neighbors()
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in nbrs[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def generate(spec: GeneratorSpec) -> Union[Graph, tuple[Graph, Graph]]:
    """Build the graph named by ``spec``.

    ``cfi_pair`` returns both members unless ``spec.twisted`` picks one.
    """
    f = spec.family
    p = spec.params
    if f == "cycle":
        return cycle(*_need(spec, 1))
    if f == "path":
        return path(*_need(spec, 1))
    if f == "complete":
        return complete(*_need(spec, 1))
    if f == "complete_bipartite":
        return complete_bipartite(*_need(spec, 2))
    if f == "prism":
        return prism(*(p or (3,)))
    if f == "kneser":
        return kneser(*_need(spec, 2))
    if f == "johnson":
        return johnson(*_need(spec, 2))
    if f == "hamming":
        return hamming(*_need(spec, 2))
    if f == "paley":
        return paley(*_need(spec, 1))
    if f == "rook":
        return rook(*_need(spec, 1))
    if f == "shrikhande":
        _need(spec, 0)
        return shrikhande()
    if f == "petersen":
        _need(spec, 0)
        return petersen()
    if f == "random_regular":
        if len(p) == 3:
            return random_regular(p[0], p[1], p[2])
        return random_regular(*_need(spec, 2), spec.seed)
    if f == "disjoint_union":
        if not spec.parts:
            raise GeneratorError("disjoint_union needs at least one part")
        parts = [generate_one(s) for s in spec.parts]
        return disjoint_union(*parts).with_name("+".join(str(s) for s in spec.parts))
    if f == "complement_of":
        if len(spec.parts) != 1:
            raise GeneratorError("complement_of takes exactly one part")
        return complement(generate_one(spec.parts[0])).with_name(f"complement({spec.parts[0]})")
    if f == "cfi_pair":
        if len(spec.parts) != 1:
            raise GeneratorError("cfi_pair takes exactly one base graph")
        pair = cfi_pair(generate_one(spec.parts[0]))
        if spec.twisted is None:
            return pair
        return pair[1] if spec.twisted else pair[0]
    raise GeneratorError(f"unknown family {f!r}")  # pragma: no cover


def generate_one(spec: GeneratorSpec) -> Graph:
    """Like :func:`generate`, but a bare CFI spec yields the untwisted graph."""
    out = generate(spec)
    if isinstance(out, tuple):
        return out[0]
    return out


# mini-language -------------------------------------------------------------


def _split_top(text: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GeneratorError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise GeneratorError(f"unbalanced parentheses in {text!r}")
    out.append("".join(cur))
    return out


def _int(tok: str, text: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GeneratorError(f"bad integer {tok!r} in {text!r}") from None


def parse_spec(text: str) -> GeneratorSpec:
    """Parse ``family[(part,...)][:param...][:twisted]``; a ``gen:`` prefix is allowed."""
    text = text.strip()
    if text.startswith("gen:"):
        text = text[4:]
    if not text:
        raise GeneratorError("empty generator spec")
    head, *rest = _split_top(text, ":")
    parts: tuple[GeneratorSpec, ...] = ()
    if "(" in head:
        if not head.endswith(")"):
            raise GeneratorError(f"bad generator spec {text!r}")
        name, inner = head.split("(", 1)
        parts = tuple(parse_spec(s) for s in _split_top(inner[:-1], ","))
    else:
        name = head
    twisted = None
    if rest and rest[-1] in ("twisted", "untwisted"):
        twisted = rest.pop() == "twisted"

    # shorthand K5, C8, P3
    if not parts and len(name) > 1 and name[0] in "KCP" and name[1:].isdigit():
        rest = [name[1:]] + rest
        name = name[0]
    family = _ALIASES.get(name, name)
    if family not in FAMILIES:
        raise GeneratorError(f"unknown family {name!r} in {text!r}")

    if family == "cfi_pair" and not parts:
        if not rest:
            raise GeneratorError("cfi needs a base graph, e.g. cfi:K5 or cfi(petersen)")
        parts = (parse_spec(":".join(rest)),)
        rest = []
    if twisted is not None and family != "cfi_pair":
        raise GeneratorError(f"':twisted' only applies to cfi specs, got {text!r}")
    params = tuple(_int(t, text) for t in rest)
    return GeneratorSpec(family, params, parts=parts, twisted=twisted)


_SHORT = {v: k for k, v in _ALIASES.items() if len(k) > 1}


def format_spec(spec: GeneratorSpec) -> str:
    name = _SHORT.get(spec.family, spec.family)
    if spec.family == "cfi_pair":
        base = format_spec(spec.parts[0])
        out = f"cfi({base})"
    elif spec.parts:
        out = f"{name}({','.join(format_spec(s) for s in spec.parts)})"
    else:
        out = name
    if spec.params:
        out += ":" + ":".join(str(x) for x in spec.params)
    if spec.twisted is not None:
        out += ":twisted" if spec.twisted else ":untwisted"
    return out


def from_text(text: str) -> Graph:
    return generate_one(parse_spec(text))
