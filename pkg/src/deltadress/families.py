"""Generated benchmark families (the constructed hard instances).

Chang graphs, Latin-square and Steiner SRGs and generalized quadrangles are
distributed as graph6 data and are not generated here.
"""

from __future__ import annotations

from .generators import cfi_pair, cycle, from_text
from .graph import Graph

PALEY_PRIMES = (5, 13, 17, 29, 37, 41, 53, 61, 73)
RANDOM_REGULAR_SHAPES = ((16, 3), (16, 4), (20, 3), (20, 4), (24, 3), (24, 4))
RANDOM_REGULAR_SEEDS_PER_SHAPE = 5
RANDOM_REGULAR_BASE_SEED = 20260


def _specs(*specs: str) -> list[Graph]:
    return [from_text(s) for s in specs]


def miyazaki() -> list[Graph]:
    out = []
    for k in range(3, 11):
        out.extend(cfi_pair(cycle(k)))
    return out


def random_regular_family() -> list[Graph]:
    out = []
    seed = RANDOM_REGULAR_BASE_SEED
    for n, d in RANDOM_REGULAR_SHAPES:
        for _ in range(RANDOM_REGULAR_SEEDS_PER_SHAPE):
            out.append(from_text(f"rrg:{n}:{d}:{seed}"))
            seed += 1
    return out


GENERATED_FAMILIES = {
    "SRG(16,6,2,2) Rook/Shrikhande": lambda: _specs("rook:4", "shrikhande"),
    "SRG(10,3,0,1) Petersen/Pentagonal Prism": lambda: _specs("petersen", "prism:5"),
    "Paley(13)": lambda: _specs("paley:13"),
    "Rook L2(5)": lambda: _specs("rook:5"),
    "Prism vs K3,3": lambda: _specs("prism", "kbip:3:3"),
    "2C4 vs C8": lambda: _specs("union(C4,C4)", "C8"),
    "Paley family": lambda: _specs(*(f"paley:{q}" for q in PALEY_PRIMES)),
    "Rook family": lambda: _specs(*(f"rook:{n}" for n in range(3, 8))),
    "Kneser family": lambda: _specs("kneser:5:2", "kneser:6:2", "kneser:7:2", "kneser:7:3", "kneser:8:3"),
    "Johnson family": lambda: _specs(
        "johnson:4:2", "johnson:5:2", "johnson:6:2", "johnson:6:3", "johnson:7:2", "johnson:7:3"
    ),
    "Hamming family": lambda: _specs("hamming:2:3", "hamming:3:2", "hamming:3:3", "hamming:4:2"),
    "Miyazaki (CFI-over-cycle)": miyazaki,
    "Complement pairs": lambda: _specs("complement(petersen)", "complement(prism:5)"),
    "Random regular": random_regular_family,
}

# same-size pairs with their reference minimum L-infinity margin at k = 1
REFERENCE_MARGINS = {
    "SRG(16,6,2,2) Rook/Shrikhande": 9.03e-2,
    "SRG(10,3,0,1) Petersen/Pentagonal Prism": 4.08e-2,
    "Prism vs K3,3": 5.48e-1,
    "2C4 vs C8": 5.09e-2,
    "Complement pairs": 3.61e-1,
}


def family(name: str) -> list[Graph]:
    try:
        return GENERATED_FAMILIES[name]()
    except KeyError:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(GENERATED_FAMILIES)}") from None


def find_family(key: str) -> str:
    """Resolve a case-insensitive prefix or slug to a GENERATED_FAMILIES name."""
    slug = key.lower().replace("_", " ").replace("-", " ")
    for name in GENERATED_FAMILIES:
        if name.lower() == slug:
            return name
    hits = [n for n in GENERATED_FAMILIES if n.lower().startswith(slug) or slug in n.lower()]
    if len(hits) == 1:
        return hits[0]
    raise KeyError(f"family {key!r} matches {len(hits)} entries: {hits or list(GENERATED_FAMILIES)}")


# Spence collection: (n, d, lambda, mu) -> graph count. The data is not
# shipped; files are looked up as ``srg_<n>_<d>_<lambda>_<mu>.g6``.
SPENCE_FAMILIES = {
    (25, 12, 5, 6): 15,
    (26, 10, 3, 4): 10,
    (28, 12, 6, 4): 4,
    (29, 14, 6, 7): 41,
    (35, 18, 9, 9): 3854,
    (36, 14, 4, 6): 180,
    (36, 15, 6, 6): 32548,
    (37, 18, 8, 9): 6760,
    (40, 12, 2, 4): 28,
    (45, 12, 3, 3): 78,
    (50, 21, 8, 9): 18,
    (64, 18, 2, 6): 167,
    (45, 22, 10, 11): 6,
    (65, 32, 15, 16): 32,
}

# rounding-stability rows: unique count expected at every d in 6..14
ROUNDING_ROWS = {
    (25, 12, 5, 6): 15,
    (26, 10, 3, 4): 10,
    (28, 12, 6, 4): 4,
    (29, 14, 6, 7): 41,
    (36, 14, 4, 6): 180,
    (40, 12, 2, 4): 27,
    (45, 12, 3, 3): 78,
    (50, 21, 8, 9): 18,
    (64, 18, 2, 6): 167,
    (45, 22, 10, 11): 6,
    (65, 32, 15, 16): 32,
}

# exact minimum margins at k = 1 (G5/G25 excluded for SRG(40,12,2,4))
SPENCE_MARGINS = {
    (25, 12, 5, 6): 1.47e-2,
    (26, 10, 3, 4): 1.16e-3,
    (28, 12, 6, 4): 1.78e-2,
    (29, 14, 6, 7): 3.60e-3,
    (36, 14, 4, 6): 3.59e-4,
    (40, 12, 2, 4): 5.84e-4,
    (45, 12, 3, 3): 7.73e-4,
    (50, 21, 8, 9): 5.92e-3,
    (64, 18, 2, 6): 1.37e-4,
    (45, 22, 10, 11): 4.16e-3,
    (65, 32, 15, 16): 2.06e-3,
}


def spence_filename(params: tuple[int, int, int, int]) -> str:
    return "srg_{}_{}_{}_{}.g6".format(*params)
