from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indecomp.complexes import (
    NotACycle,
    NotSimplicial,
    SimplicialComplex,
    SimplicialMap,
    betti_numbers,
    boundary_matrix,
    clique_complex,
    homology,
    induced_map,
)
from indecomp.exactalg import rank


def circle(n: int) -> SimplicialComplex:
    return SimplicialComplex([(i, (i + 1) % n) for i in range(n)])


def octahedron() -> SimplicialComplex:
    return SimplicialComplex([(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)])


def dense_betti(X: SimplicialComplex, k: int, p: int) -> int:
    def r(j):
        if j < 1 or j > X.dim or X.count(j) == 0:
            return 0
        return rank(boundary_matrix(X, j, p))

    return X.count(k) - r(k) - r(k + 1)


random_complexes = st.lists(
    st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True), min_size=1, max_size=10
).map(SimplicialComplex)


@settings(max_examples=60, deadline=None)
@given(random_complexes, st.sampled_from([2, 3, 101]))
def test_boundary_squares_to_zero(X, p):
    for k in range(2, X.dim + 1):
        assert (boundary_matrix(X, k - 1, p) @ boundary_matrix(X, k, p)).is_zero()


@settings(max_examples=60, deadline=None)
@given(random_complexes, st.sampled_from([2, 3, 101]))
def test_betti_matches_dense_ranks_and_euler(X, p):
    betti = betti_numbers(X, p)
    assert betti == [dense_betti(X, k, p) for k in range(X.dim + 1)]
    assert sum((-1) ** k * b for k, b in enumerate(betti)) == X.euler_characteristic()


@settings(max_examples=40, deadline=None)
@given(random_complexes)
def test_identity_induces_identity(X):
    f = SimplicialMap.inclusion(X, X)
    for k in range(X.dim + 1):
        assert induced_map(f, k, 5).is_identity()


def test_fixture_homology():
    assert betti_numbers(circle(5), 101) == [1, 1]
    assert betti_numbers(octahedron(), 2) == [1, 0, 1]
    assert betti_numbers(SimplicialComplex([(0, 1, 2)]), 3) == [1, 0, 0]
    assert octahedron().euler_characteristic() == 2


def test_wrapping_map_induces_degree():
    # the hexagon wraps twice around the triangle
    hexagon, tri = circle(6), circle(3)
    f = SimplicialMap(hexagon, tri, {i: i % 3 for i in range(6)})
    m = induced_map(f, 1, 7)
    assert m.entries in ([[2]], [[5]])


def test_functoriality_on_composites():
    c12, c6, c3 = circle(12), circle(6), circle(3)
    f = SimplicialMap(c12, c6, {i: i % 6 for i in range(12)})
    g = SimplicialMap(c6, c3, {i: i % 3 for i in range(6)})
    gf = SimplicialMap(c12, c3, f.compose_vertices(g))
    assert induced_map(gf, 1, 11) == induced_map(g, 1, 11) @ induced_map(f, 1, 11)


def test_non_simplicial_map_rejected():
    with pytest.raises(NotSimplicial):
        SimplicialMap(SimplicialComplex([(0, 1)]), SimplicialComplex([], vertices=[0, 1]), {0: 0, 1: 1})


def test_coordinates_reject_non_cycles():
    h = homology(circle(4), 1, 3)
    with pytest.raises(NotACycle):
        h.coordinates({0: 1})


def test_clique_complex_against_enumeration():
    edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (1, 3), (0, 3)]
    X = clique_complex(range(6), edges, maxdim=3)
    adj = {frozenset(e) for e in edges}
    for k in range(1, 4):
        want = sorted(c for c in itertools.combinations(range(6), k + 1)
                      if all(frozenset(pair) in adj for pair in itertools.combinations(c, 2)))
        assert X.simplices.get(k, []) == want
    assert X.count(0) == 6


def test_complex_json_roundtrip():
    X = octahedron()
    assert SimplicialComplex.from_json(X.to_json()) == X
