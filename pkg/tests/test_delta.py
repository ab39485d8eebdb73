import hashlib
import math
import struct

import numpy as np
import pytest
from hypothesis import given
from scipy.optimize import brentq

from deltadress.delta import (
    DeltaConfig,
    DeltaFingerprint,
    Verdict,
    compare,
    delta_fingerprint,
    digests,
    dump_fingerprint,
    escalate,
    histogram,
    load_fingerprint,
)
from deltadress.dress import ConvergenceError, SolverConfig
from deltadress.generators import cfi_pair, complete, cycle, petersen, rook, shrikhande
from deltadress.graph import Graph, induced_delete, permute

from conftest import graphs_with_perm

EMPTY_SHA256 = "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"


def fp_of(values, k=1, n=3):
    v = np.sort(np.asarray(values, dtype=float))
    return DeltaFingerprint(v, np.array([v.size]), k, n)


def test_delta1_k3_is_three_k2_edges():
    fp = delta_fingerprint(complete(3)).fingerprint
    assert fp.total_length == 3
    assert fp.row_lengths.tolist() == [1, 1, 1]
    assert np.abs(fp.values - 2.0).max() <= 1e-6


def test_delta1_c4_is_four_paths():
    root = brentq(lambda p: p**3 + p**2 - 2 * p - 4, 1.0, 2.0, xtol=1e-15)
    fp = delta_fingerprint(cycle(4)).fingerprint
    assert fp.total_length == 8
    assert np.abs(fp.values - root).max() <= 1e-6


def test_delta0_histograms():
    fp = delta_fingerprint(cycle(4), DeltaConfig(k=0)).fingerprint
    # floor(sqrt(2) * 1e6) via exact integer square root
    assert histogram(fp).entries == {math.isqrt(2 * 10**12): 4}
    fp = delta_fingerprint(complete(5), DeltaConfig(k=0)).fingerprint
    assert histogram(fp).entries == {2_000_000: 10}


def test_digest_of_empty_fingerprint():
    fp = delta_fingerprint(Graph(3, ()), DeltaConfig(k=1)).fingerprint
    assert fp.total_length == 0
    dg = digests(fp, histogram(fp))
    assert dg.histogram_hex == EMPTY_SHA256
    assert dg.multiset_hex == EMPTY_SHA256


def test_digest_byte_layout():
    fp = fp_of([0.5, 1.25, 1.25])
    dg = digests(fp, histogram(fp, 0.25))
    hist_bytes = struct.pack(">QQQQ", 2, 1, 5, 2)
    vals_bytes = struct.pack(">ddd", 0.5, 1.25, 1.25)
    assert dg.histogram_hex == hashlib.sha256(hist_bytes).hexdigest()
    assert dg.multiset_hex == hashlib.sha256(vals_bytes).hexdigest()


def test_histogram_rejects_bad_epsilon():
    with pytest.raises(ValueError):
        histogram(fp_of([1.0]), 0.0)


def test_compare_rules():
    a = fp_of([1.0, 1.5])
    assert compare(a, fp_of([1.0, 1.5 + 5e-6])).verdict is Verdict.EQUAL
    c = compare(a, fp_of([1.0, 1.5 + 2e-5]))
    assert c.separated and c.linf == pytest.approx(2e-5)
    c = compare(a, fp_of([1.0]))
    assert c.separated and c.linf is None
    assert compare(fp_of([]), fp_of([])).verdict is Verdict.EQUAL


def test_rook_shrikhande_separated_at_k1():
    esc = escalate(rook(4), shrikhande(), DeltaConfig(k=1), k_max=2)
    assert esc.k == 1
    assert esc.comparison.linf == pytest.approx(9.03e-2, rel=5e-3)
    # Delta^0 is blind on this pair: both are 6-regular SRGs with equal parameters
    assert compare(
        delta_fingerprint(rook(4), DeltaConfig(k=0)).fingerprint,
        delta_fingerprint(shrikhande(), DeltaConfig(k=0)).fingerprint,
    ).verdict is Verdict.EQUAL


def test_escalate_self_is_exhausted():
    esc = escalate(petersen(), petersen(), DeltaConfig(k=1), k_max=2)
    assert esc.exhausted
    assert [k for k, _ in esc.history] == [1, 2]
    assert esc.comparison.linf == 0.0


def test_escalate_caps_at_vertex_count():
    esc = escalate(complete(2), complete(2), DeltaConfig(k=1), k_max=5)
    assert [k for k, _ in esc.history] == [1, 2]


def test_petersen_rows_collapse():
    r = delta_fingerprint(petersen(), DeltaConfig(k=1, retain_matrix=True))
    rows = r.matrix.rows
    assert len(rows) == 10
    assert all(np.abs(row - rows[0]).max() <= 1e-9 for row in rows)
    assert list(r.matrix.subsets())[:2] == [(0,), (1,)]


def test_cfi_k5_is_a_negative_control():
    a, b = cfi_pair(complete(5))
    cmp = compare(delta_fingerprint(a).fingerprint, delta_fingerprint(b).fingerprint)
    assert cmp.verdict is Verdict.EQUAL


def test_rows_match_direct_deletion():
    g = petersen()
    r = delta_fingerprint(g, DeltaConfig(k=2, retain_matrix=True))
    assert len(r.matrix.rows) == 45
    from deltadress.dress import dress_fingerprint

    for s, row in zip(r.matrix.subsets(), r.matrix.rows):
        direct = dress_fingerprint(induced_delete(g, s)).values
        assert row.tobytes() == direct.tobytes()


@given(graphs_with_perm(max_n=9))
def test_delta1_permutation_invariance(gp):
    g, perm = gp
    a = delta_fingerprint(g).fingerprint
    b = delta_fingerprint(permute(g, perm)).fingerprint
    assert compare(a, b).verdict is Verdict.EQUAL


def test_threads_do_not_change_bits():
    g = rook(5)
    one = delta_fingerprint(g, DeltaConfig(k=2))
    many = delta_fingerprint(g, DeltaConfig(k=2, workers=4))
    assert one.fingerprint.values.tobytes() == many.fingerprint.values.tobytes()
    assert one.digests == many.digests


def test_depth_validation():
    with pytest.raises(ValueError):
        delta_fingerprint(cycle(3), DeltaConfig(k=4))
    with pytest.raises(ValueError):
        DeltaConfig(k=-1)


def test_convergence_error_reports_subset():
    with pytest.raises(ConvergenceError) as info:
        delta_fingerprint(petersen(), DeltaConfig(k=1, solver=SolverConfig(max_iter=2)))
    assert info.value.subset == (0,)


def test_container_round_trip():
    r = delta_fingerprint(shrikhande())
    blob = dump_fingerprint(r)
    fp, dg = load_fingerprint(blob)
    assert fp.values.tobytes() == r.fingerprint.values.tobytes()
    assert fp.row_lengths.tolist() == r.fingerprint.row_lengths.tolist()
    assert (fp.k, fp.n, fp.epsilon) == (1, 16, 1e-6)
    assert dg == r.digests
    assert dump_fingerprint((fp, None, dg)) == blob


@pytest.mark.parametrize("mutate", ["magic", "version", "truncate", "extra"])
def test_container_rejects_corruption(mutate):
    blob = bytearray(dump_fingerprint(delta_fingerprint(cycle(5))))
    if mutate == "magic":
        blob[0:4] = b"XXXX"
    elif mutate == "version":
        blob[4] = 9
    elif mutate == "truncate":
        blob = blob[:-1]
    else:
        blob += b"\0"
    with pytest.raises(ValueError):
        load_fingerprint(bytes(blob))
