from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indecomp.intervals import (
    Interval,
    ZeroHom,
    all_intervals,
    all_orientations,
    canonical_hom,
    decompose_forward,
    find_k22,
    forward_hom_nonzero,
    hom_table,
    interval_rep,
)
from indecomp.quiver import QuiverMismatch, direct_sum

# Forward A_5: the pairs ([a,b], [c,d]) with nonzero Hom, listed by hand from
# the support-overlap rule (the source must start inside the target and the
# target must end inside the source).
FORWARD_NONZERO_A3 = {
    ((1, 1), (1, 1)), ((1, 2), (1, 1)), ((1, 2), (1, 2)), ((1, 3), (1, 1)), ((1, 3), (1, 2)),
    ((1, 3), (1, 3)), ((2, 2), (1, 2)), ((2, 2), (2, 2)), ((2, 3), (1, 2)), ((2, 3), (1, 3)),
    ((2, 3), (2, 2)), ((2, 3), (2, 3)), ((3, 3), (1, 3)), ((3, 3), (2, 3)), ((3, 3), (3, 3)),
}


def test_forward_a3_table_matches_hand_enumeration():
    table = hom_table(3, "ff")
    got = {((x.a, x.b), (y.a, y.b)) for (x, y), v in table.items() if v}
    assert got == FORWARD_NONZERO_A3


def test_forward_closed_form_on_a5():
    for (x, y), v in hom_table(5, "ffff").items():
        assert bool(v) == forward_hom_nonzero(x, y)


@pytest.mark.parametrize("tau", all_orientations(5))
def test_hom_dims_at_most_one(tau):
    assert set(hom_table(5, tau).values()) <= {0, 1}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 5), st.integers(1, 5)).map(lambda t: Interval(min(t), max(t))),
                min_size=1, max_size=5))
def test_decompose_recovers_direct_sum(ivs):
    rep = direct_sum(*[interval_rep(5, "ffff", iv, 7) for iv in ivs])
    want = {}
    for iv in ivs:
        want[iv] = want.get(iv, 0) + 1
    assert decompose_forward(rep) == want


def test_decompose_rejects_other_orientations():
    with pytest.raises(QuiverMismatch):
        decompose_forward(interval_rep(3, "fb", Interval(1, 2)))


def test_canonical_hom():
    f = canonical_hom(5, Interval(2, 5), Interval(1, 4))
    assert f.is_morphism()
    assert [f[str(i)].shape for i in range(1, 6)] == [(1, 0), (1, 1), (1, 1), (1, 1), (0, 1)]
    assert all(f[str(i)].is_identity() for i in (2, 3, 4))
    with pytest.raises(ZeroHom):
        canonical_hom(5, Interval(4, 4), Interval(3, 3))


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(3, 2)
    with pytest.raises(ValueError):
        interval_rep(3, "ff", Interval(2, 4))
    assert len(all_intervals(5)) == 15


def test_k22_forward_five():
    found = find_k22(5, "ffff")
    tuples = {tuple((iv.a, iv.b) for iv in k.as_tuple()) for k in found}
    assert ((2, 5), (3, 4), (1, 4), (2, 3)) in tuples
    assert ((3, 5), (4, 4), (2, 4), (3, 3)) not in tuples


def test_k22_ordered_contains_swaps():
    ordered = find_k22(5, "ffff", ordered=True)
    keys = {k.as_tuple() for k in ordered}
    for k in ordered:
        assert (k.d1, k.d2, k.r2, k.r1) in keys
        assert (k.d2, k.d1, k.r1, k.r2) in keys
    assert len(ordered) == 4 * len(find_k22(5, "ffff"))


@pytest.mark.parametrize("tau", ["fbfb", "bbbb", "ffbb"])
def test_k22_search_is_consistent_with_table(tau):
    table = hom_table(5, tau)
    for k in find_k22(5, tau):
        for d in (k.d1, k.d2):
            for r in (k.r1, k.r2):
                assert table[(d, r)] == 1
        assert table[(k.d1, k.d2)] == table[(k.d2, k.d1)] == 0
        assert table[(k.r1, k.r2)] == table[(k.r2, k.r1)] == 0
