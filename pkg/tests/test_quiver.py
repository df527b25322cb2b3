from __future__ import annotations

import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indecomp.exactalg import FieldMatrix, jordan_cell, try_inverse
from indecomp.families import build_M_cl5, build_kronecker, kronecker_rep
from indecomp.quiver import (
    Arrow,
    BoundQuiver,
    Morphism,
    QuiverMismatch,
    Representation,
    ShapeMismatch,
    are_isomorphic,
    end_basis,
    fitting_check,
    hom_basis,
    is_local_exhaustive,
    ladder_join,
    ladder_quiver,
    ladder_split,
    linear_quiver,
)


def brute_hom_count(v: Representation, w: Representation) -> int:
    """Count every tuple of vertex matrices satisfying the morphism condition."""
    p = v.p
    verts = v.quiver.vertices
    shapes = [(w.dims[x], v.dims[x]) for x in verts]
    spaces = [list(itertools.product(range(p), repeat=r * c)) for r, c in shapes]
    count = 0
    for choice in itertools.product(*spaces):
        comps = {x: FieldMatrix(np.array(e, dtype=np.int64).reshape(s), p, rows=s[0], cols=s[1])
                 for x, e, s in zip(verts, choice, shapes)}
        if Morphism(v, w, comps).is_morphism():
            count += 1
    return count


@st.composite
def small_line_reps(draw, p=2):
    tau = draw(st.sampled_from(["f", "b"]))
    q = linear_quiver(2, tau)
    dims = {"1": draw(st.integers(0, 2)), "2": draw(st.integers(0, 2))}
    a = q.arrow("a1")
    r, c = dims[a.dst], dims[a.src]
    ent = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return Representation(q, p, dims, {"a1": FieldMatrix(ent, p, rows=r, cols=c)})


@settings(max_examples=40, deadline=None)
@given(small_line_reps(), small_line_reps())
def test_hom_dimension_matches_brute_force(v, w):
    if v.quiver != w.quiver:
        with pytest.raises(QuiverMismatch):
            hom_basis(v, w)
        return
    basis = hom_basis(v, w)
    assert v.p ** basis.dim == brute_hom_count(v, w)
    assert all(f.is_morphism() for f in basis.elements)


def test_kronecker_hom_brute_force():
    v = build_kronecker(1, 0, 3)
    w = build_kronecker(2, 0, 3)
    assert 3 ** hom_basis(v, w).dim == brute_hom_count(v, w)
    assert 3 ** hom_basis(w, v).dim == brute_hom_count(w, v)


def test_end_basis_closed_under_composition():
    end_basis(build_M_cl5(3, 1, 5), check_closure=True)


def test_locality_agrees_with_direct_sums():
    m0, m1 = build_M_cl5(1, 0, 2), build_M_cl5(1, 1, 2)
    assert is_local_exhaustive(m0).is_local
    res = is_local_exhaustive(m0.direct_sum(m1))
    assert res.verdict == "not_local"
    w = res.witness
    assert w.is_morphism() and not w.is_invertible() and not (w.source.identity() - w).is_invertible()


def test_zero_representation_is_not_local():
    q = linear_quiver(2)
    zero = Representation(q, 2, {"1": 0, "2": 0}, {})
    assert is_local_exhaustive(zero).verdict == "not_local"


def test_locality_budget():
    res = is_local_exhaustive(build_M_cl5(4, 0, 3), budget=10)
    assert res.verdict == "budget_exceeded" and res.needed == 3**4


def test_fitting_finds_idempotent_on_sum():
    s = build_M_cl5(2, 0, 7).direct_sum(build_M_cl5(2, 3, 7))
    res = fitting_check(s, trials=16, seed=3)
    assert res.verdict == "decomposable"
    e = res.idempotent
    assert e.is_morphism() and e.after(e) == e and not e.is_zero() and not e.is_identity()


def test_fitting_respects_seed_determinism():
    m = build_M_cl5(3, 0, 101)
    a, b = fitting_check(m, 8, seed=5), fitting_check(m, 8, seed=5)
    assert a.verdict == b.verdict == "probably_indecomposable" and a.trials == b.trials


def _conjugate(rep: Representation, seed: int) -> tuple[Representation, dict]:
    """Random change of basis at every vertex."""
    rng = np.random.default_rng(seed)
    p = rep.p
    g = {}
    for v, n in rep.dims.items():
        while True:
            m = FieldMatrix(rng.integers(0, p, size=(n, n)), p, rows=n, cols=n)
            if n == 0 or m.rank() == n:
                break
        g[v] = m
    maps = {}
    for a in rep.quiver.arrows:
        maps[a.id] = g[a.dst] @ rep.maps[a.id] @ try_inverse(g[a.src]) if rep.dims[a.src] else rep.maps[a.id]
    return Representation(rep.quiver, p, rep.dims, maps), g


@pytest.mark.parametrize("seed", range(3))
def test_isomorphic_after_change_of_basis(seed):
    m = build_M_cl5(2, 1, 5)
    m2, _ = _conjugate(m, seed)
    assert m2.validate() is None
    res = are_isomorphic(m, m2, seed=seed)
    assert res.is_iso and res.witness.is_morphism() and res.witness.is_invertible()


def test_non_isomorphic_by_dimension():
    assert are_isomorphic(build_M_cl5(1, 0), build_M_cl5(2, 0)).verdict == "not_iso"


def test_kronecker_iso_exhaustive_negative():
    # different Jordan eigenvalues: Hom is nonzero but has no invertible element
    v = kronecker_rep(FieldMatrix.identity(2, 3), jordan_cell(2, 0, 3))
    w = kronecker_rep(FieldMatrix.identity(2, 3), FieldMatrix([[0, 0], [0, 1]], 3))
    res = are_isomorphic(v, w, trials=4)
    assert res.verdict == "not_iso"


def test_validate_reports_violation():
    q = ladder_quiver(2, "f")
    one = FieldMatrix.identity(1, 5)
    rep = Representation(q, 5, {"b1": 1, "b2": 1, "t1": 1, "t2": 1},
                         {"v1": one, "v2": one, "b.a1": one, "t.a1": one * 2})
    viol = rep.validate()
    assert viol is not None and viol.difference.entries in ([[1]], [[4]])


def test_shape_errors():
    q = linear_quiver(2)
    with pytest.raises(ShapeMismatch):
        Representation(q, 5, {"1": 1, "2": 2}, {"a1": FieldMatrix.identity(1, 5)})
    with pytest.raises(ValueError):
        BoundQuiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("b", "2", "1")])


def test_ladder_split_join_roundtrip():
    m = build_M_cl5(2, 1)
    bottom, top, vert = ladder_split(m)
    assert vert.is_morphism()
    assert bottom.dim_vector() == (0, 2, 4, 4, 2) and top.dim_vector() == (2, 4, 4, 2, 0)
    assert ladder_join(bottom, top, vert) == m
    with pytest.raises(QuiverMismatch):
        ladder_split(build_kronecker(1, 0))


def test_representation_json_roundtrip():
    m = build_M_cl5(2, 1, 7)
    data = json.loads(json.dumps(m.to_json()))
    assert set(data) == {"p", "quiver", "dims", "maps"}
    assert {"id", "src", "dst"} == set(data["quiver"]["arrows"][0])
    assert Representation.from_json(data) == m
