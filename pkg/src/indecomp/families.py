"""Concrete representation families: the ladder modules, Kronecker embeddings, and 3x3 grids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactalg import DEFAULT_PRIME, FieldMatrix, block, jordan_cell
from .intervals import Interval, canonical_hom, interval_rep
from .quiver import (
    Arrow,
    BoundQuiver,
    Morphism,
    Representation,
    direct_sum,
    ladder_join,
    ladder_quiver,
    linear_quiver,
)


def _eye(n: int, p: int) -> FieldMatrix:
    return FieldMatrix.identity(n, p)


def _zero(r: int, c: int, p: int) -> FieldMatrix:
    return FieldMatrix.zeros(r, c, p)


def _check_d(d: int) -> None:
    if d < 1:
        raise ValueError(f"size parameter must be at least 1, got {d}")


# ---------------------------------------------------------------- CL5 family


def build_M_cl5(d: int, lam: int, p: int = DEFAULT_PRIME) -> Representation:
    """The indecomposable CL5(ffff) representation with dims (d,2d,2d,d,0) over (0,d,2d,2d,d)."""
    _check_d(d)
    I, O, J = _eye(d, p), _zero(d, d, p), jordan_cell(d, lam, p)
    q = ladder_quiver(5, "ffff")
    dims = {"t1": d, "t2": 2 * d, "t3": 2 * d, "t4": d, "t5": 0,
            "b1": 0, "b2": d, "b3": 2 * d, "b4": 2 * d, "b5": d}
    maps = {
        "t.a1": block([[I], [O]]),
        "t.a2": _eye(2 * d, p),
        "t.a3": block([[I, O]]),
        "t.a4": _zero(0, d, p),
        "b.a1": _zero(d, 0, p),
        "b.a2": block([[O], [I]]),
        "b.a3": _eye(2 * d, p),
        "b.a4": block([[O, I]]),
        "v1": _zero(d, 0, p),
        "v2": block([[I], [J]]),
        "v3": block([[I, I], [I, J]]),
        "v4": block([[I, I]]),
        "v5": _zero(0, d, p),
    }
    return Representation(q, p, dims, maps)


PHI_SOURCES = (Interval(3, 4), Interval(2, 5))
PHI_TARGETS = (Interval(1, 4), Interval(2, 3))


@dataclass
class BlockMorphism:
    """A morphism between direct sums of intervals, kept with its block labels.

    ``blocks[i][j]`` is the d x d coefficient matrix multiplying the canonical
    map from source summand j to target summand i.
    """

    sources: tuple[Interval, ...]
    targets: tuple[Interval, ...]
    blocks: list[list[FieldMatrix]]
    morphism: Morphism


def build_phi(d: int, lam: int, p: int = DEFAULT_PRIME) -> BlockMorphism:
    """Map I[3,4]^d + I[2,5]^d -> I[1,4]^d + I[2,3]^d with coefficient blocks [[I, I], [I, J]]."""
    _check_d(d)
    n, tau = 5, "ffff"
    I, J = _eye(d, p), jordan_cell(d, lam, p)
    coeff = [[I, I], [I, J]]
    src = direct_sum(*[interval_rep(n, tau, iv, p) for iv in PHI_SOURCES for _ in range(d)])
    dst = direct_sum(*[interval_rep(n, tau, iv, p) for iv in PHI_TARGETS for _ in range(d)])
    comps = {}
    for v in map(str, range(1, n + 1)):
        m = np.zeros((dst.dims[v], src.dims[v]), dtype=np.int64)
        # offsets of summand copies present at vertex v
        s_off, t_off = _copy_offsets(PHI_SOURCES, d, int(v)), _copy_offsets(PHI_TARGETS, d, int(v))
        for i, tgt in enumerate(PHI_TARGETS):
            for j, s in enumerate(PHI_SOURCES):
                if t_off[i] is None or s_off[j] is None:
                    continue
                if canonical_hom(n, s, tgt, p)[v].is_zero():
                    continue
                m[t_off[i]:t_off[i] + d, s_off[j]:s_off[j] + d] = coeff[i][j].array
        comps[v] = FieldMatrix(m, p)
    f = Morphism(src, dst, comps)
    return BlockMorphism(PHI_SOURCES, PHI_TARGETS, coeff, f)


def _copy_offsets(ivs: tuple[Interval, ...], d: int, vertex: int) -> list[int | None]:
    out, off = [], 0
    for iv in ivs:
        if vertex in iv:
            out.append(off)
            off += d
        else:
            out.append(None)
    return out


def phi_as_ladder(d: int, lam: int, p: int = DEFAULT_PRIME) -> Representation:
    """The ladder representation whose vertical morphism is phi(d, lam)."""
    bm = build_phi(d, lam, p)
    return ladder_join(bm.morphism.source, bm.morphism.target, bm.morphism)


# ---------------------------------------------------------------- Kronecker and cube


def kronecker_quiver() -> BoundQuiver:
    return BoundQuiver(["1", "2"], [Arrow("g1", "1", "2"), Arrow("g2", "1", "2")], name="Kronecker")


def build_kronecker(n: int, lam: int, p: int = DEFAULT_PRIME) -> Representation:
    """R_n(lam): K^n with g1 = I and g2 = J_n(lam)."""
    _check_d(n)
    return Representation(kronecker_quiver(), p, {"1": n, "2": n},
                          {"g1": _eye(n, p), "g2": jordan_cell(n, lam, p)})


def kronecker_rep(g1: FieldMatrix, g2: FieldMatrix) -> Representation:
    if g1.shape != g2.shape:
        raise ValueError("Kronecker maps must share a shape")
    return Representation(kronecker_quiver(), g1.p, {"1": g1.cols, "2": g1.rows}, {"g1": g1, "g2": g2})


CUBE_FRONT = ("1", "2", "3", "4")
CUBE_BACK = ("1'", "2'", "3'", "4'")


def cube_quiver() -> BoundQuiver:
    """Commutative cube: squares 1,2,3,4 and 1',2',3',4' joined by i -> i'."""
    arrows = []
    for layer in (CUBE_FRONT, CUBE_BACK):
        a, b, c, e = layer
        arrows += [Arrow(f"{a}->{b}", a, b), Arrow(f"{a}->{c}", a, c),
                   Arrow(f"{b}->{e}", b, e), Arrow(f"{c}->{e}", c, e)]
    for x, y in zip(CUBE_FRONT, CUBE_BACK):
        arrows.append(Arrow(f"{x}->{y}", x, y))

    def path(*vs):
        return tuple(f"{s}->{t}" for s, t in zip(vs, vs[1:]))

    rels = [
        (path("1", "2", "4"), path("1", "3", "4")),
        (path("1'", "2'", "4'"), path("1'", "3'", "4'")),
        (path("1", "2", "2'"), path("1", "1'", "2'")),
        (path("1", "3", "3'"), path("1", "1'", "3'")),
        (path("2", "4", "4'"), path("2", "2'", "4'")),
        (path("3", "4", "4'"), path("3", "3'", "4'")),
    ]
    return BoundQuiver(CUBE_FRONT + CUBE_BACK, arrows, rels, name="cube")


def kronecker_to_cube(rep: Representation) -> Representation:
    """Fully faithful embedding of Kronecker representations into the cube."""
    p = rep.p
    n1, n2 = rep.dims["1"], rep.dims["2"]
    dims = {"1": 0, "2": n1, "3": n1, "4": n1, "1'": n2, "2'": n2, "3'": n2, "4'": 0}
    maps = {
        "2->4": _eye(n1, p),
        "3->4": _eye(n1, p),
        "1'->2'": _eye(n2, p),
        "1'->3'": _eye(n2, p),
        "2->2'": rep.maps["g1"],
        "3->3'": rep.maps["g2"],
    }
    return Representation(cube_quiver(), p, dims, maps)


def kronecker_morphism_to_cube(f: Morphism) -> Morphism:
    a, b = kronecker_to_cube(f.source), kronecker_to_cube(f.target)
    p = f.source.p
    comps = {"1": _zero(0, 0, p), "4'": _zero(0, 0, p)}
    for v in ("2", "3", "4"):
        comps[v] = f["1"]
    for v in ("1'", "2'", "3'"):
        comps[v] = f["2"]
    return Morphism(a, b, comps)


def cl2_intervals(p: int = DEFAULT_PRIME) -> tuple[Representation, Representation]:
    """The two CL2(f) modules with K^2-dimensional Hom between them.

    The first has K -> K on top over 0 -> K, joined at the right; the second
    has K -> 0 on top over K -> K, joined at the left.
    """
    line = linear_quiver(2, "f")
    one, z = _eye(1, p), None

    def row(d1, d2, arrow):
        maps = {"a1": arrow} if arrow is not None else {}
        return Representation(line, p, {"1": d1, "2": d2}, maps)

    b1, t1 = row(0, 1, z), row(1, 1, one)
    first = ladder_join(b1, t1, Morphism(b1, t1, {"1": _zero(1, 0, p), "2": one}))
    b2, t2 = row(1, 1, one), row(1, 0, z)
    second = ladder_join(b2, t2, Morphism(b2, t2, {"1": one, "2": _zero(0, 1, p)}))
    return first, second


# ---------------------------------------------------------------- 3x3 grids


GRID_VARIANTS = ("4in", "4out", "3in1out", "1in3out", "2in2out_a", "2in2out_b")


def _gv(r: int, c: int) -> str:
    return f"{r},{c}"


def grid_quiver(h01: str, h12: str, v01: str, v12: str) -> BoundQuiver:
    """Commutative 3x3 grid; rows counted from the top.

    ``h01``/``h12`` are '>' or '<' for the column gaps, ``v01``/``v12`` are
    'v' (downward) or '^' (upward) for the row gaps.
    """
    arrows = []
    for r in range(3):
        for c, o in ((0, h01), (1, h12)):
            s, t = ((r, c), (r, c + 1)) if o == ">" else ((r, c + 1), (r, c))
            arrows.append(Arrow(f"{_gv(*s)}->{_gv(*t)}", _gv(*s), _gv(*t)))
    for c in range(3):
        for r, o in ((0, v01), (1, v12)):
            s, t = ((r, c), (r + 1, c)) if o == "v" else ((r + 1, c), (r, c))
            arrows.append(Arrow(f"{_gv(*s)}->{_gv(*t)}", _gv(*s), _gv(*t)))
    by_pair = {frozenset((a.src, a.dst)): a for a in arrows}
    rels = []
    for r in range(2):
        for c in range(2):
            corners = [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)]
            # source and sink of the square
            names = [_gv(*x) for x in corners]
            sq = [a for a in arrows if a.src in names and a.dst in names]
            outdeg = {v: sum(a.src == v for a in sq) for v in names}
            src = next(v for v in names if outdeg[v] == 2)
            firsts = [a for a in sq if a.src == src]
            paths = []
            for a in firsts:
                b = next(x for x in sq if x.src == a.dst)
                paths.append((a.id, b.id))
            rels.append((paths[0], paths[1]))
    verts = [_gv(r, c) for r in range(3) for c in range(3)]
    return BoundQuiver(verts, arrows, rels, name=f"grid({h01}{h12}{v01}{v12})")


_ORIENTATION = {
    "3in1out": (">", "<", "^", "^"),
    "1in3out": ("<", ">", "^", "^"),
    "4in": (">", "<", "v", "^"),
    "4out": ("<", ">", "^", "v"),
    "2in2out_a": ("<", ">", "v", "^"),
    "2in2out_b": ("<", "<", "v", "v"),
}


def build_grid33(variant: str, d: int, lam: int, p: int = DEFAULT_PRIME) -> Representation:
    """One of the six completed 3x3 grid modules, with J_d(lam) in place of J_d(0)."""
    if variant not in _ORIENTATION:
        raise ValueError(f"unknown grid variant {variant!r}; choose from {GRID_VARIANTS}")
    _check_d(d)
    I, O, J = _eye(d, p), _zero(d, d, p), jordan_cell(d, lam, p)
    inj1, inj2 = block([[I], [O]]), block([[O], [I]])
    pr1, pr2 = block([[I, O]]), block([[O, I]])
    diag, graph = block([[I], [I]]), block([[I], [J]])
    add, addj = block([[I, I]]), block([[I, J]])
    q = grid_quiver(*_ORIENTATION[variant])
    dims = {v: d for v in q.vertices}
    dims["1,1"] = 2 * d
    layout: dict[tuple[str, str], FieldMatrix]
    if variant == "3in1out":
        zero = ["2,0", "2,2"]
        layout = {("0,0", "0,1"): I, ("0,2", "0,1"): I, ("1,0", "1,1"): inj1, ("1,0", "0,0"): I,
                ("1,1", "0,1"): add, ("1,2", "1,1"): inj2, ("1,2", "0,2"): I, ("2,1", "1,1"): graph}
    elif variant == "1in3out":
        zero = ["0,0", "0,2"]
        layout = {("1,1", "1,0"): pr1, ("1,1", "0,1"): add, ("1,1", "1,2"): pr2,
                ("2,0", "1,0"): I, ("2,1", "2,0"): I, ("2,1", "1,1"): graph, ("2,1", "2,2"): J,
                ("2,2", "1,2"): I}
    elif variant == "4in":
        zero = ["0,0", "0,2", "2,0", "2,2"]
        layout = {("0,1", "1,1"): diag, ("1,0", "1,1"): inj1, ("1,2", "1,1"): inj2, ("2,1", "1,1"): graph}
    elif variant == "4out":
        zero = ["0,0", "0,2", "2,0", "2,2"]
        layout = {("1,1", "1,0"): pr1, ("1,1", "0,1"): addj, ("1,1", "2,1"): add, ("1,1", "1,2"): pr2}
    elif variant == "2in2out_a":
        zero = []
        layout = {("0,0", "1,0"): I, ("0,1", "0,0"): I, ("0,1", "0,2"): I, ("0,1", "1,1"): diag,
                ("0,2", "1,2"): I, ("1,1", "1,0"): pr1, ("1,1", "1,2"): pr2,
                ("2,0", "1,0"): I, ("2,1", "2,0"): I, ("2,1", "1,1"): graph, ("2,1", "2,2"): J,
                ("2,2", "1,2"): I}
    else:  # 2in2out_b
        zero = ["0,2", "2,0"]
        layout = {("0,0", "1,0"): I, ("0,1", "0,0"): I, ("0,1", "1,1"): diag,
                ("1,1", "1,0"): pr1, ("1,1", "2,1"): pr2, ("1,2", "2,2"): J, ("1,2", "1,1"): graph,
                ("2,2", "2,1"): I}
    for v in zero:
        dims[v] = 0
    maps = {}
    for (s, t), m in layout.items():
        a = q.arrow(f"{s}->{t}")
        maps[a.id] = m
    return Representation(q, p, dims, maps)


def grid_center_maps(rep: Representation) -> dict[str, FieldMatrix]:
    """Maps on the four arrows touching the center, keyed by arrow id."""
    return {a.id: rep.maps[a.id] for a in rep.quiver.arrows if "1,1" in (a.src, a.dst)}


def complete_grid33(orientation: tuple[str, str, str, str], center: dict[str, FieldMatrix],
                    d: int, p: int = DEFAULT_PRIME) -> Representation:
    """Fill in a 3x3 grid from its four center maps.

    The four edge midpoints carry K^d and the center K^(2d).  A corner
    square whose midpoints are joined through the center by an in-then-out
    path gets K^d at its corner, carrying the composite on the first arrow of
    the outer path and the identity on the second.  Other corners are zero.
    """
    q = grid_quiver(*orientation)
    dims = {v: d for v in q.vertices}
    dims["1,1"] = 2 * d
    maps = dict(center)
    mids = {"0,1", "1,0", "1,2", "2,1"}
    for corner in ("0,0", "0,2", "2,0", "2,2"):
        r, c = map(int, corner.split(","))
        near = [v for v in mids if abs(int(v[0]) - r) + abs(int(v[2]) - c) == 1]
        into = [a for a in q.arrows if a.dst == "1,1" and a.src in near]
        out = [a for a in q.arrows if a.src == "1,1" and a.dst in near]
        if len(into) != 1 or len(out) != 1:
            dims[corner] = 0
            continue
        composite = center[out[0].id] @ center[into[0].id]
        first = q.arrow(f"{into[0].src}->{corner}")
        second = q.arrow(f"{corner}->{out[0].dst}")
        maps[first.id] = composite
        maps[second.id] = _eye(d, p)
    return Representation(q, p, dims, maps)


def recipe_grid33(d: int, lam: int, p: int = DEFAULT_PRIME) -> Representation:
    """Three-in one-out grid completed from center maps [I;0], [I;I], [0;I] in and [I J] out."""
    I, O, J = _eye(d, p), _zero(d, d, p), jordan_cell(d, lam, p)
    orient = _ORIENTATION["3in1out"]
    center = {
        "1,0->1,1": block([[I], [O]]),
        "1,2->1,1": block([[I], [I]]),
        "2,1->1,1": block([[O], [I]]),
        "1,1->0,1": block([[I, J]]),
    }
    return complete_grid33(orient, center, d, p)


def standard_quivers() -> dict[str, BoundQuiver]:
    out = {f"CL5({t})": ladder_quiver(5, t) for t in ("ffff",)}
    out["CL2(f)"] = ladder_quiver(2, "f")
    out["A5(ffff)"] = linear_quiver(5, "ffff")
    out["Kronecker"] = kronecker_quiver()
    out["cube"] = cube_quiver()
    for v, o in _ORIENTATION.items():
        out[f"grid33[{v}]"] = grid_quiver(*o)
    return out
