from __future__ import annotations

import pytest

from indecomp.exactalg import FieldMatrix, jordan_cell
from indecomp.families import (
    GRID_VARIANTS,
    PHI_SOURCES,
    PHI_TARGETS,
    build_M_cl5,
    build_grid33,
    build_kronecker,
    build_phi,
    cl2_intervals,
    complete_grid33,
    cube_quiver,
    grid_center_maps,
    kronecker_morphism_to_cube,
    kronecker_rep,
    kronecker_to_cube,
    phi_as_ladder,
    recipe_grid33,
    standard_quivers,
)
from indecomp.intervals import decompose_forward
from indecomp.quiver import are_isomorphic, hom_basis, is_local_exhaustive, ladder_split


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("lam", [0, 1, 50])
def test_M_is_a_valid_ladder_representation(d, lam):
    m = build_M_cl5(d, lam)
    assert m.validate() is None
    assert m.total_dim == 12 * d
    assert [m.dims[f"t{i}"] for i in range(1, 6)] == [d, 2 * d, 2 * d, d, 0]
    assert [m.dims[f"b{i}"] for i in range(1, 6)] == [0, d, 2 * d, 2 * d, d]


def test_M_rows_decompose_into_phi_intervals():
    d = 2
    bottom, top, _ = ladder_split(build_M_cl5(d, 0))
    assert decompose_forward(bottom) == {iv: d for iv in PHI_SOURCES}
    assert decompose_forward(top) == {iv: d for iv in PHI_TARGETS}


def test_M_rejects_bad_d():
    with pytest.raises(ValueError):
        build_M_cl5(0, 0)


@pytest.mark.parametrize("d,lam", [(1, 0), (2, 3), (3, 1)])
def test_phi_ladder_is_isomorphic_to_M(d, lam):
    bm = build_phi(d, lam, 7)
    assert bm.morphism.is_morphism()
    assert bm.blocks[1][1] == jordan_cell(d, lam, 7)
    assert are_isomorphic(phi_as_ladder(d, lam, 7), build_M_cl5(d, lam, 7)).is_iso


def test_cube_relations_commute_for_theta():
    q = cube_quiver()
    assert len(q.vertices) == 8 and len(q.arrows) == 12 and len(q.relations) == 6
    r = kronecker_to_cube(build_kronecker(3, 2, 5))
    assert r.validate() is None


def test_theta_on_morphisms_is_functorial():
    v, w = build_kronecker(2, 1, 5), build_kronecker(2, 1, 5)
    basis = hom_basis(v, w)
    for f in basis.elements:
        g = kronecker_morphism_to_cube(f)
        assert g.is_morphism()
        assert kronecker_morphism_to_cube(f.after(f)) == g.after(g)


def test_theta_reflects_isomorphism_class():
    a = kronecker_rep(FieldMatrix.identity(2, 3), jordan_cell(2, 1, 3))
    b = kronecker_rep(FieldMatrix.identity(2, 3), FieldMatrix([[1, 0], [0, 1]], 3))
    assert not are_isomorphic(a, b).is_iso
    assert not are_isomorphic(kronecker_to_cube(a), kronecker_to_cube(b)).is_iso


def test_cl2_intervals_are_local():
    for rep in cl2_intervals(3):
        assert rep.validate() is None
        assert is_local_exhaustive(rep).is_local


@pytest.mark.parametrize("variant", GRID_VARIANTS)
def test_grid_variants_valid_and_local(variant):
    rep = build_grid33(variant, 2, 1, 2)
    assert rep.validate() is None
    assert is_local_exhaustive(rep).is_local


@pytest.mark.parametrize("variant", GRID_VARIANTS)
def test_completion_reproduces_each_display(variant):
    rep = build_grid33(variant, 3, 0, 5)
    q = rep.quiver
    rebuilt = complete_grid33(_orientation(rep), grid_center_maps(rep), 3, 5)
    assert rebuilt.quiver == q and rebuilt == rep


def _orientation(rep):
    arrows = {(a.src, a.dst) for a in rep.quiver.arrows}

    def way(x, y, fwd, back):
        return fwd if (x, y) in arrows else back

    return (way("1,0", "1,1", ">", "<"), way("1,1", "1,2", ">", "<"),
            way("0,1", "1,1", "v", "^"), way("1,1", "2,1", "v", "^"))


@pytest.mark.parametrize("lam", [0, 1, 4])
def test_recipe_grid_carries_shifted_jordan_block(lam):
    d, p = 3, 7
    rep = recipe_grid33(d, lam, p)
    assert rep.validate() is None
    assert rep.maps["1,2->0,2"] == jordan_cell(d, lam + 1, p) or rep.maps["0,2->1,2"] == jordan_cell(d, lam + 1, p)


def test_standard_quivers_have_expected_shape():
    qs = standard_quivers()
    assert {"CL5(ffff)", "cube", "Kronecker"} <= set(qs)
    assert len(qs["CL5(ffff)"].vertices) == 10
    assert sum(k.startswith("grid33") for k in qs) == len(GRID_VARIANTS)
