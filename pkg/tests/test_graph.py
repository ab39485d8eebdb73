from collections import Counter

import pytest
from hypothesis import given

from deltadress.generators import complete, cycle, path, petersen, rook, shrikhande
from deltadress.graph import (
    Graph,
    complement,
    disjoint_union,
    induced_delete,
    permute,
    srg_parameters,
)

from conftest import graphs, graphs_with_perm


def test_graph_rejects_loops_duplicates_and_range():
    with pytest.raises(ValueError):
        Graph(3, ((1, 1),))
    with pytest.raises(ValueError):
        Graph(3, ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        Graph(3, ((0, 3),))
    with pytest.raises(ValueError):
        Graph(-1, ())


def test_graph_normalises_edge_order():
    g = Graph(3, ((2, 1), (1, 0)))
    assert g.edges == ((0, 1), (1, 2))
    assert g == Graph(3, ((0, 1), (1, 2)))


@pytest.mark.parametrize(
    "g, s, n, m",
    [
        (complete(3), {0}, 2, 1),
        (cycle(8), {0}, 7, 6),
        (disjoint_union(cycle(4), cycle(4)), {0}, 7, 6),
    ],
)
def test_induced_delete_examples(g, s, n, m):
    h = induced_delete(g, s)
    assert (h.n, h.m) == (n, m)


def test_induced_delete_reindexes_in_order():
    assert induced_delete(cycle(8), {0}) == path(7)
    # C4 + C4 minus vertex 0 is P3 + C4
    assert induced_delete(disjoint_union(cycle(4), cycle(4)), {0}) == disjoint_union(path(3), cycle(4))


def test_induced_delete_out_of_range():
    with pytest.raises(IndexError):
        induced_delete(cycle(4), {4})


@given(graphs(min_n=1))
def test_induced_delete_edge_count(g):
    s = {0}
    h = induced_delete(g, s)
    assert h.m == sum(1 for u, v in g.edges if u not in s and v not in s)


def test_complement_examples():
    assert complement(complete(5)).m == 0
    assert complement(complete(5)).n == 5
    c5 = complement(cycle(5))
    assert c5.m == 5 and set(c5.degrees()) == {2}


@given(graphs())
def test_complement_involution(g):
    assert complement(complement(g)) == g
    assert g.m + complement(g).m == g.n * (g.n - 1) // 2


@given(graphs_with_perm())
def test_permute_properties(gp):
    g, perm = gp
    h = permute(g, perm)
    assert h.m == g.m
    assert Counter(h.degrees()) == Counter(g.degrees())
    inv = [0] * g.n
    for i, p in enumerate(perm):
        inv[p] = i
    assert permute(h, inv) == g
    assert permute(g, list(range(g.n))) == g
    assert srg_parameters(h) == srg_parameters(g)


def test_permute_rejects_non_bijection():
    with pytest.raises(ValueError):
        permute(cycle(4), [0, 0, 1, 2])
    with pytest.raises(ValueError):
        permute(cycle(4), [0, 1, 2])


def test_srg_parameters_examples():
    assert srg_parameters(petersen()) == (10, 3, 0, 1)
    assert srg_parameters(shrikhande()) == (16, 6, 2, 2)
    assert srg_parameters(rook(4)) == (16, 6, 2, 2)
    assert srg_parameters(path(3)) is None
    # complete graphs have no non-adjacent pair
    assert srg_parameters(complete(5)) is None
    assert srg_parameters(cycle(5)) == (5, 2, 0, 1)
