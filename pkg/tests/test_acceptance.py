"""Acceptance criteria, one test per criterion, each printing a result line.

The lines are also collected and shown in the pytest terminal summary.
Criterion 8 (and the data-dependent parts of 9 and 10) need the Spence SRG
files under ``data/spence/`` (or ``$DELTADRESS_SPENCE_DIR``), named
``srg_<n>_<d>_<lambda>_<mu>.g6``; they are skipped when absent.
"""

import math
import time

import numpy as np
import pytest
from scipy.optimize import brentq

from deltadress.bench import margin_analysis, rounding_stability, scan_family
from deltadress.delta import DeltaConfig, Verdict, compare, delta_fingerprint, histogram
from deltadress.dress import augmented_edges, dress_converge, dress_step
from deltadress.families import (
    ROUNDING_ROWS,
    SPENCE_FAMILIES,
    SPENCE_MARGINS,
    GENERATED_FAMILIES,
    REFERENCE_MARGINS,
    family,
    spence_filename,
)
from deltadress.generators import cfi_pair, complete, complete_bipartite, cycle, path, prism, rook, shrikhande
from deltadress.graph import permute, srg_parameters
from deltadress.graph6 import decode_graph6, encode_graph6, load_family
from deltadress.wl import DEFAULT_TUPLE_CAP, wl_distinguish

from conftest import ACCEPTANCE_LINES, SPENCE_DIR, random_graph

RATIO_FLOOR = 137
EPS = 1e-6


def record(tag, ok, detail):
    line = f"{tag:<5} {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def skip(tag, detail):
    line = f"{tag:<5} SKIP  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    pytest.skip(detail)


def ulps(x, y):
    a = np.array([x, y], dtype=np.float64).view(np.int64)
    return abs(int(a[0]) - int(a[1]))


def spence(params):
    p = SPENCE_DIR / spence_filename(params)
    return load_family(p) if p.exists() else None


def three_sig(x):
    return f"{x:.2e}"


# 1 -------------------------------------------------------------------------


def test_ac1_closed_forms():
    t0 = time.perf_counter()
    worst_c = max(
        np.abs(dress_converge(cycle(n)).edge_values() - math.sqrt(2)).max() for n in range(4, 13)
    )
    worst_k = max(np.abs(dress_converge(complete(n)).edge_values() - 2.0).max() for n in range(2, 11))
    worst_ulp = 0
    for g in [cycle(n) for n in range(4, 13)] + [complete(n) for n in range(2, 11)]:
        us, vs = augmented_edges(g)
        d = np.ones(us.size)
        for _ in range(dress_converge(g).iterations):
            d = dress_step(g, d)
            worst_ulp = max(worst_ulp, max(ulps(x, 2.0) for x in d[us == vs]))
    elapsed = time.perf_counter() - t0
    ok = worst_c <= 1e-6 and worst_k <= 1e-6 and worst_ulp <= 2 and elapsed < 1.0
    record(
        "AC1",
        ok,
        f"C_n max|d-sqrt2|={worst_c:.2e}, K_n max|d-2|={worst_k:.2e}, loop ulps<={worst_ulp}, {elapsed:.3f}s (<1s)",
    )


# 2 -------------------------------------------------------------------------


def test_ac2_p3_oracle():
    root = brentq(lambda p: p**3 + p**2 - 2 * p - 4, 1.0, 2.0, xtol=1e-15)
    err = np.abs(dress_converge(path(3)).edge_values() - root).max()
    record("AC2", err <= 1e-6, f"P3 edges vs cubic root {root:.9f}: max err {err:.2e} (<=1e-6)")


# 3 -------------------------------------------------------------------------


def test_ac3_invariance_suite():
    rng = np.random.default_rng(2026)
    t0 = time.perf_counter()
    worst_perm = worst_init = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 21))
        g = random_graph(rng, n, float(rng.uniform(0.1, 0.9)))
        h = permute(g, rng.permutation(n).tolist())
        a, b = delta_fingerprint(g).fingerprint, delta_fingerprint(h).fingerprint
        cmp = compare(a, b, 1e-5)
        worst_perm = max(worst_perm, math.inf if cmp.linf is None else cmp.linf)
        us, _ = augmented_edges(g)
        init = rng.uniform(0.1, 10.0, size=us.size)
        diff = np.abs(dress_converge(g).values - dress_converge(g, init=init).values)
        worst_init = max(worst_init, float(diff.max(initial=0.0)))
    elapsed = time.perf_counter() - t0
    ok = worst_perm <= 1e-5 and worst_init <= 1e-5 and elapsed < 60
    record(
        "AC3",
        ok,
        f"100 graphs: permuted Delta1 Linf<={worst_perm:.2e}, random init Linf<={worst_init:.2e}, {elapsed:.1f}s (<60s)",
    )


# 4 -------------------------------------------------------------------------


def test_ac4_generated_families():
    t0 = time.perf_counter()
    rows = []
    ok = True
    for name in GENERATED_FAMILIES:
        gs = family(name)
        rep = scan_family(gs, family=name)
        rows.append(f"{name} {rep.unique}/{rep.graphs}")
        ok &= rep.unique == rep.graphs
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 300
    record("AC4", ok, f"{len(rows)} families all unique at k=1, {elapsed:.1f}s (<300s): " + "; ".join(rows))


# 5 -------------------------------------------------------------------------


def test_ac5_reference_margins():
    got = []
    ok = True
    for name, ref in REFERENCE_MARGINS.items():
        rep = margin_analysis(family(name), family=name)
        match = three_sig(rep.min_linf) == three_sig(ref)
        ok &= match
        got.append(f"{name}: {rep.min_linf:.4e} vs {ref:.2e}{'' if match else ' MISMATCH'}")
    record("AC5", ok, "; ".join(got))


# 6 -------------------------------------------------------------------------


def test_ac6a_cfi_k5_delta1_equal():
    a, b = cfi_pair(complete(5))
    cmp = compare(delta_fingerprint(a).fingerprint, delta_fingerprint(b).fingerprint)
    record("AC6a", cmp.verdict is Verdict.EQUAL, f"Delta1 on CFI(K5) (n={a.n}): {cmp.verdict.value}, Linf {cmp.linf:.2e}")


def test_ac6b_fwl3_control():
    a, b = cfi_pair(complete(5))
    if a.n**3 <= DEFAULT_TUPLE_CAP:
        target, pair = "CFI(K5)", (a, b)
    else:
        target, pair = "CFI(C4)", cfi_pair(cycle(4))
    res = wl_distinguish(*pair, "fwl3")
    record(
        "AC6b",
        res.distinguished,
        f"FWL(3) on {target} (n^3={pair[0].n ** 3} within cap {DEFAULT_TUPLE_CAP:.0e}): {res.outcome.value} after {res.rounds} rounds",
    )


# 7 -------------------------------------------------------------------------


def test_ac7_wl_boundary():
    one = wl_distinguish(prism(3), complete_bipartite(3, 3), "1wl")
    two = wl_distinguish(rook(4), shrikhande(), "fwl2")
    three = wl_distinguish(rook(4), shrikhande(), "fwl3")
    ok = not one.distinguished and not two.distinguished and three.distinguished
    record(
        "AC7",
        ok,
        f"1-WL prism/K33 {one.outcome.value}; FWL(2) rook/Shrikhande {two.outcome.value}; FWL(3) {three.outcome.value}",
    )


# 8 -------------------------------------------------------------------------


def _cluster(values, tol=1e-5):
    """Distinct values up to ``tol`` (sorted input)."""
    reps = []
    for v in np.sort(values):
        if not reps or v - reps[-1] > tol:
            reps.append(v)
    return reps


@pytest.mark.spence
@pytest.mark.parametrize("params, unique", [((25, 12, 5, 6), 15), ((26, 10, 3, 4), 10), ((29, 14, 6, 7), 41)])
def test_ac8_spence_unique(params, unique):
    tag = "AC8"
    fam = spence(params)
    if fam is None:
        skip(tag, f"{spence_filename(params)} not found in {SPENCE_DIR}")
    srg_ok = all(srg_parameters(g) == params for g in fam.graphs)
    rep = scan_family(fam.graphs, family=fam.name)
    ok = srg_ok and len(fam) == SPENCE_FAMILIES[params] and rep.unique == unique
    record(tag, ok, f"SRG{params}: {len(fam)} graphs, {rep.unique} unique (expect {unique}), srg params ok={srg_ok}")


@pytest.mark.spence
def test_ac8_spence_srg40_collision():
    params = (40, 12, 2, 4)
    fam = spence(params)
    if fam is None:
        skip("AC8", f"{spence_filename(params)} not found in {SPENCE_DIR}")
    gs = fam.graphs
    rep = scan_family(gs, escalate_to=2, family=fam.name)
    groups = [c.members for c in rep.collisions]
    resolved = [c.resolved_at for c in rep.collisions]

    g5, g25 = gs[4], gs[24]
    d2 = [delta_fingerprint(g, DeltaConfig(k=2)).fingerprint for g in (g5, g25)]
    bins = sorted(len(histogram(fp, EPS)) for fp in d2)

    per_deletion = []
    for g in (g5, g25):
        m = delta_fingerprint(g, DeltaConfig(k=1, retain_matrix=True)).matrix
        per_deletion.append(_cluster(np.concatenate(m.rows)))
    expected = [0.61890, 0.76479, 0.80281]
    three = all(len(c) == 3 and [round(float(v), 5) for v in c] == expected for c in per_deletion)

    srg_ok = all(srg_parameters(g) == params for g in gs)
    ok = srg_ok and rep.unique == 27 and groups == [[5, 25]] and resolved == [2] and bins == [15, 16] and three
    shown = [[round(float(v), 5) for v in c[:4]] + (["..."] if len(c) > 4 else []) for c in per_deletion]
    record(
        "AC8",
        ok,
        f"SRG(40,12,2,4): srg params ok={srg_ok}, unique {rep.unique}, groups {groups} resolved at {resolved}, "
        f"Delta2 bins {bins}, distinct per-deletion values {[len(c) for c in per_deletion]} {shown}",
    )


@pytest.mark.spence
@pytest.mark.parametrize("params", list(ROUNDING_ROWS))
def test_ac8_spence_rounding(params):
    fam = spence(params)
    if fam is None:
        skip("AC8", f"rounding row: {spence_filename(params)} not found in {SPENCE_DIR}")
    rep = rounding_stability(fam.graphs, family=fam.name)
    want = ROUNDING_ROWS[params]
    ok = set(rep.unique_by_digits.values()) == {want}
    record("AC8", ok, f"rounding SRG{params}: {rep.unique_by_digits} (expect {want} at every d)")


# 9 -------------------------------------------------------------------------


def test_ac9_ratio_floor_generated():
    ratios = {name: margin_analysis(family(name)).ratio for name in REFERENCE_MARGINS}
    ok = all(r >= RATIO_FLOOR for r in ratios.values())
    record("AC9", ok, "generated margins / eps: " + ", ".join(f"{k}={v:.0f}" for k, v in ratios.items()))


@pytest.mark.spence
@pytest.mark.parametrize("params", list(SPENCE_MARGINS))
def test_ac9_ratio_floor_spence(params):
    fam = spence(params)
    if fam is None:
        skip("AC9", f"{spence_filename(params)} not found in {SPENCE_DIR}")
    exclude = [(5, 25)] if params == (40, 12, 2, 4) else []
    rep = margin_analysis(fam.graphs, exclude=exclude, family=fam.name)
    record("AC9", rep.ratio >= RATIO_FLOOR, f"SRG{params}: min Linf {rep.min_linf:.3e}, ratio {rep.ratio:.0f} (>= {RATIO_FLOOR})")


# 10 ------------------------------------------------------------------------


def test_ac10_graph6_round_trip():
    gs = [g for name in GENERATED_FAMILIES for g in family(name)]
    gs += list(cfi_pair(complete(5)))
    bad = 0
    for g in gs:
        line = encode_graph6(g)
        bad += decode_graph6(line) != g or encode_graph6(decode_graph6(line)) != line
    lines = 0
    files = sorted(SPENCE_DIR.glob("*.g6")) if SPENCE_DIR.is_dir() else []
    for p in files:
        for raw in p.read_bytes().splitlines():
            raw = raw.strip()
            if not raw or raw.startswith(b">>graph6<<"):
                continue
            lines += 1
            bad += encode_graph6(decode_graph6(raw)) != raw
    record("AC10", bad == 0, f"{len(gs)} generated graphs and {lines} lines from {len(files)} data files, {bad} mismatches")
