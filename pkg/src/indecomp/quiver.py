"""Bound quivers, their representations over F_p, and endomorphism-ring tests."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exactalg import (
    FieldMatrix,
    batch_invertible,
    check_prime,
    kernel_array,
    matmul_mod,
    rank,
    try_inverse,
)

DEFAULT_BUDGET = 2**20


class QuiverMismatch(ValueError):
    """Two representations live on different bound quivers."""


class ShapeMismatch(ValueError):
    """A matrix does not fit the dimensions at its arrow's endpoints."""


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    dst: str


Path = tuple[str, ...]


class BoundQuiver:
    """Finite acyclic quiver with commutativity relations.

    A path is a tuple of arrow ids in traversal order.  A relation is a pair of
    paths with common source and target whose composites must agree.
    """

    def __init__(self, vertices: Sequence[str], arrows: Iterable[Arrow | tuple],
                 relations: Iterable[tuple[Sequence[str], Sequence[str]]] = (), name: str | None = None):
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        self.arrows: tuple[Arrow, ...] = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in arrows)
        self.relations: tuple[tuple[Path, Path], ...] = tuple((tuple(l), tuple(r)) for l, r in relations)
        self.name = name
        self._by_id = {a.id: a for a in self.arrows}
        self._check()

    def _check(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        if len(self._by_id) != len(self.arrows):
            raise ValueError("duplicate arrow ids")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.src not in vs or a.dst not in vs:
                raise ValueError(f"arrow {a.id} has an unknown endpoint")
        for lhs, rhs in self.relations:
            if not lhs or not rhs:
                raise ValueError("relations need nonempty paths")
            if self.path_ends(lhs) != self.path_ends(rhs):
                raise ValueError(f"relation paths {lhs} and {rhs} have different endpoints")
        self.topological_order()

    def arrow(self, arrow_id: str) -> Arrow:
        return self._by_id[arrow_id]

    def path_ends(self, path: Sequence[str]) -> tuple[str, str]:
        arrows = [self._by_id[a] for a in path]
        for x, y in zip(arrows, arrows[1:]):
            if x.dst != y.src:
                raise ValueError(f"path {tuple(path)} is not composable")
        return arrows[0].src, arrows[-1].dst

    def topological_order(self) -> list[str]:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.dst] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self.arrows:
                if a.src == v:
                    indeg[a.dst] -= 1
                    if indeg[a.dst] == 0:
                        ready.append(a.dst)
        if len(order) != len(self.vertices):
            raise ValueError("quiver has an oriented cycle")
        return order

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundQuiver):
            return NotImplemented
        return (self.vertices == other.vertices and self.arrows == other.arrows
                and set(self.relations) == set(other.relations))

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        label = self.name or "BoundQuiver"
        return f"<{label}: {len(self.vertices)} vertices, {len(self.arrows)} arrows, {len(self.relations)} relations>"

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "src": a.src, "dst": a.dst} for a in self.arrows],
            "relations": [[list(l), list(r)] for l, r in self.relations],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BoundQuiver":
        return cls(data["vertices"], [Arrow(a["id"], a["src"], a["dst"]) for a in data["arrows"]],
                   [(l, r) for l, r in data.get("relations", [])], name=data.get("name"))


@dataclass
class Violation:
    """A relation whose two composites disagree."""

    relation: tuple[Path, Path]
    difference: FieldMatrix


class Representation:
    """Vector spaces ``K^dims[v]`` at the vertices and matrices on the arrows.

    The matrix on an arrow ``i -> j`` has shape ``(dims[j], dims[i])``.
    """

    def __init__(self, quiver: BoundQuiver, p: int, dims: Mapping[str, int], maps: Mapping[str, FieldMatrix]):
        self.quiver = quiver
        self.p = check_prime(p)
        self.dims = {v: int(dims[v]) for v in quiver.vertices}
        if set(dims) - set(quiver.vertices):
            raise ValueError(f"dimensions given for unknown vertices {sorted(set(dims) - set(quiver.vertices))}")
        self.maps: dict[str, FieldMatrix] = {}
        for a in quiver.arrows:
            m = maps.get(a.id)
            shape = (self.dims[a.dst], self.dims[a.src])
            if m is None:
                m = FieldMatrix.zeros(*shape, p=self.p)
            if m.p != self.p:
                raise ValueError(f"arrow {a.id} matrix over F_{m.p}, representation over F_{self.p}")
            if m.shape != shape:
                raise ShapeMismatch(f"arrow {a.id}: {a.src}->{a.dst} needs shape {shape}, got {m.shape}")
            self.maps[a.id] = m
        extra = set(maps) - set(self.maps)
        if extra:
            raise ValueError(f"matrices given for unknown arrows {sorted(extra)}")

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    def path_matrix(self, path: Sequence[str]) -> FieldMatrix:
        src, _ = self.quiver.path_ends(path)
        out = FieldMatrix.identity(self.dims[src], self.p)
        for a in path:
            out = self.maps[a] @ out
        return out

    def validate(self) -> Violation | None:
        """First violated relation, or None when all relations hold."""
        for rel in self.quiver.relations:
            diff = self.path_matrix(rel[0]) - self.path_matrix(rel[1])
            if not diff.is_zero():
                return Violation(rel, diff)
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.p == other.p and self.quiver == other.quiver and self.dims == other.dims
                and self.maps == other.maps)

    def __repr__(self) -> str:
        return f"Representation(F_{self.p}, dims={self.dim_vector()})"

    def direct_sum(self, other: "Representation") -> "Representation":
        _same_quiver(self, other)
        from .exactalg import direct_sum_matrix

        dims = {v: self.dims[v] + other.dims[v] for v in self.quiver.vertices}
        maps = {a: direct_sum_matrix(self.maps[a], other.maps[a]) for a in self.maps}
        return Representation(self.quiver, self.p, dims, maps)

    def identity(self) -> "Morphism":
        return Morphism(self, self, {v: FieldMatrix.identity(n, self.p) for v, n in self.dims.items()})

    def zero_morphism(self, target: "Representation") -> "Morphism":
        return Morphism(self, target, {v: FieldMatrix.zeros(target.dims[v], self.dims[v], self.p)
                                       for v in self.quiver.vertices})

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "quiver": self.quiver.to_json(),
            "dims": dict(self.dims),
            "maps": {a: m.to_json() for a, m in self.maps.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Representation":
        p = data["p"]
        quiver = BoundQuiver.from_json(data["quiver"])
        maps = {a: FieldMatrix.from_json(m, p) for a, m in data["maps"].items()}
        return cls(quiver, p, data["dims"], maps)


def direct_sum(*reps: Representation) -> Representation:
    out = reps[0]
    for r in reps[1:]:
        out = out.direct_sum(r)
    return out


def _same_quiver(v: Representation, w: Representation) -> None:
    if v.quiver != w.quiver:
        raise QuiverMismatch(f"{v.quiver!r} vs {w.quiver!r}")
    if v.p != w.p:
        raise QuiverMismatch(f"field mismatch F_{v.p} vs F_{w.p}")


class Morphism:
    """Vertexwise linear maps ``source -> target``."""

    def __init__(self, source: Representation, target: Representation, components: Mapping[str, FieldMatrix]):
        _same_quiver(source, target)
        self.source = source
        self.target = target
        self.components = {}
        for v in source.quiver.vertices:
            c = components[v]
            if c.shape != (target.dims[v], source.dims[v]):
                raise ShapeMismatch(f"component at {v} has shape {c.shape}")
            self.components[v] = c

    def __getitem__(self, v: str) -> FieldMatrix:
        return self.components[v]

    def __repr__(self) -> str:
        return f"Morphism({ {v: c.entries for v, c in self.components.items()} })"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.components == other.components

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, {v: c + other[v] for v, c in self.components.items()})

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, {v: c - other[v] for v, c in self.components.items()})

    def scale(self, k: int) -> "Morphism":
        return Morphism(self.source, self.target, {v: c * k for v, c in self.components.items()})

    def after(self, other: "Morphism") -> "Morphism":
        """Composite ``self o other``."""
        return Morphism(other.source, self.target, {v: c @ other[v] for v, c in self.components.items()})

    def is_morphism(self) -> bool:
        for a in self.source.quiver.arrows:
            if self.target.maps[a.id] @ self[a.src] != self[a.dst] @ self.source.maps[a.id]:
                return False
        return True

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components.values())

    def is_identity(self) -> bool:
        return all(c.is_identity() for c in self.components.values())

    def is_invertible(self) -> bool:
        return all(c.rows == c.cols and rank(c) == c.rows for c in self.components.values())

    def inverse(self) -> "Morphism":
        return Morphism(self.target, self.source, {v: try_inverse(c) for v, c in self.components.items()})

    def to_json(self) -> dict:
        return {v: c.to_json() for v, c in self.components.items()}


class MorphismBasis:
    """A basis of Hom(source, target) with stacked per-vertex arrays."""

    def __init__(self, source: Representation, target: Representation, stacks: dict[str, np.ndarray]):
        self.source = source
        self.target = target
        self.p = source.p
        self.stacks = stacks
        self.dim = next(iter(stacks.values())).shape[0] if stacks else 0

    def __len__(self) -> int:
        return self.dim

    @property
    def elements(self) -> list[Morphism]:
        return [self.combine(np.eye(self.dim, dtype=np.int64)[i]) for i in range(self.dim)]

    def combine(self, coeffs: Sequence[int]) -> Morphism:
        c = np.asarray(coeffs, dtype=np.int64) % self.p
        comps = {}
        for v, st in self.stacks.items():
            arr = np.tensordot(c, st, axes=1) % self.p if self.dim else st.sum(axis=0)
            comps[v] = FieldMatrix._wrap(arr, self.p)
        return Morphism(self.source, self.target, comps)

    def batch(self, coeffs: np.ndarray) -> dict[str, np.ndarray]:
        """Components of many combinations at once; ``coeffs`` has shape (B, dim)."""
        return {v: np.tensordot(coeffs, st, axes=1) % self.p for v, st in self.stacks.items()}

    def coordinates(self, f: Morphism) -> list[int] | None:
        """Coordinates of ``f`` in this basis, or None when f is not in the span."""
        from .exactalg import solve

        a = np.concatenate([st.reshape(self.dim, -1) for st in self.stacks.values()], axis=1).T
        b = np.concatenate([f[v].array.reshape(-1) for v in self.stacks]).reshape(-1, 1)
        if self.dim == 0:
            return [] if not b.any() else None
        x = solve(a, b, self.p)
        return None if x is None else x[:, 0].tolist()


def hom_basis(source: Representation, target: Representation) -> MorphismBasis:
    """Basis of Hom(source, target) from one stacked linear system."""
    _same_quiver(source, target)
    p = source.p
    q = source.quiver
    offsets, n = {}, 0
    for v in q.vertices:
        offsets[v] = n
        n += target.dims[v] * source.dims[v]
    blocks = []
    for a in q.arrows:
        # target_a f_src - f_dst source_a = 0, using row-major vectorisation
        ws, wt = source.dims[a.src], target.dims[a.dst]
        vs_, vt_ = target.dims[a.src], source.dims[a.dst]
        rows = wt * ws
        if rows == 0:
            continue
        eq = np.zeros((rows, n), dtype=np.int64)
        if vs_ * ws:
            eq[:, offsets[a.src]:offsets[a.src] + vs_ * ws] = np.kron(target.maps[a.id].array, np.eye(ws, dtype=np.int64))
        if wt * vt_:
            blk = np.kron(np.eye(wt, dtype=np.int64), source.maps[a.id].array.T)
            sl = slice(offsets[a.dst], offsets[a.dst] + wt * vt_)
            eq[:, sl] = (eq[:, sl] - blk) % p
        blocks.append(eq[eq.any(axis=1)])
    system = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, n), dtype=np.int64)
    ker = kernel_array(system, p) if n else np.zeros((0, 0), dtype=np.int64)
    k = ker.shape[1]
    stacks = {}
    for v in q.vertices:
        r, c = target.dims[v], source.dims[v]
        part = ker[offsets[v]:offsets[v] + r * c]
        stacks[v] = part.T.reshape(k, r, c).copy()
    return MorphismBasis(source, target, stacks)


def end_basis(rep: Representation, check_closure: bool = False) -> MorphismBasis:
    basis = hom_basis(rep, rep)
    if check_closure:
        for f in basis.elements:
            for g in basis.elements:
                if basis.coordinates(f.after(g)) is None:
                    raise AssertionError("endomorphism basis not closed under composition")
    return basis


# ---------------------------------------------------------------- locality


@dataclass
class LocalityResult:
    verdict: str  # "local", "not_local" or "budget_exceeded"
    elements_checked: int = 0
    witness: Morphism | None = None
    needed: int | None = None

    @property
    def is_local(self) -> bool:
        return self.verdict == "local"


def _enumerate_coefficients(p: int, k: int, chunk: int):
    total = p**k
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = np.empty((idx.size, k), dtype=np.int64)
        for j in range(k - 1, -1, -1):
            digits[:, j] = idx % p
            idx = idx // p
        yield digits


def _all_invertible(comps: dict[str, np.ndarray], p: int, size: int) -> np.ndarray:
    ok = np.ones(size, dtype=bool)
    for arr in comps.values():
        if arr.shape[1] == 0:
            continue
        ok &= batch_invertible(arr, p)
    return ok


def is_local_exhaustive(rep: Representation, budget: int = DEFAULT_BUDGET, chunk: int = 4096) -> LocalityResult:
    """Decide whether End(rep) is local by checking every element.

    A finite-dimensional algebra is local exactly when, for each element a,
    either a or 1 - a is invertible.  The zero representation is not local.
    """
    p = rep.p
    if rep.total_dim == 0:
        return LocalityResult("not_local", 0, rep.identity())
    basis = end_basis(rep)
    k = basis.dim
    needed = p**k
    if needed > budget:
        return LocalityResult("budget_exceeded", 0, needed=needed)
    ident = {v: np.eye(n, dtype=np.int64) for v, n in rep.dims.items()}
    checked = 0
    for coeffs in _enumerate_coefficients(p, k, chunk):
        comps = basis.batch(coeffs)
        inv_a = _all_invertible(comps, p, len(coeffs))
        rest = ~inv_a
        if rest.any():
            sub = {v: (ident[v][None] - arr[rest]) % p for v, arr in comps.items()}
            inv_b = _all_invertible(sub, p, int(rest.sum()))
            bad = np.flatnonzero(rest)[~inv_b]
            if bad.size:
                return LocalityResult("not_local", checked + int(bad[0]) + 1,
                                      witness=basis.combine(coeffs[bad[0]]))
        checked += len(coeffs)
    return LocalityResult("local", checked)


# ---------------------------------------------------------------- Fitting


@dataclass
class FittingResult:
    verdict: str  # "decomposable" or "probably_indecomposable"
    trials: int
    seed: int
    idempotent: Morphism | None = None


def _minimal_polynomial(blocks: dict[str, np.ndarray], p: int) -> list[int]:
    """Monic minimal polynomial (low degree first) of a vertexwise endomorphism."""
    mats = [b for b in blocks.values() if b.shape[0]]
    powers = [np.concatenate([np.eye(m.shape[0], dtype=np.int64).reshape(-1) for m in mats])]
    cur = [np.eye(m.shape[0], dtype=np.int64) for m in mats]
    bound = sum(m.shape[0] for m in mats)
    for deg in range(1, bound + 1):
        cur = [matmul_mod(c, m, p) for c, m in zip(cur, mats)]
        powers.append(np.concatenate([c.reshape(-1) for c in cur]))
        ker = kernel_array(np.stack(powers, axis=1), p)
        if ker.shape[1]:
            v = ker[:, 0]
            lead = int(v[-1])
            if lead == 0:
                continue
            inv = pow(lead, p - 2, p)
            return [(int(x) * inv) % p for x in v]
    raise AssertionError("no annihilating polynomial found")


def _poly_at(coeffs: Sequence[int], mat: np.ndarray, p: int) -> np.ndarray:
    n = mat.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in reversed(coeffs):
        out = (matmul_mod(out, mat, p) + int(c) * np.eye(n, dtype=np.int64)) % p
    return out


def _idempotent_from(blocks: dict[str, np.ndarray], p: int) -> dict[str, np.ndarray] | None:
    from sympy.polys.domains import ZZ
    from sympy.polys.galoistools import gf_factor, gf_gcdex, gf_mul, gf_pow, gf_quo, gf_rem

    minpoly = _minimal_polynomial(blocks, p)
    high_first = [int(c) for c in reversed(minpoly)]
    _, factors = gf_factor(high_first, p, ZZ)
    if len(factors) < 2:
        return None
    f, e = factors[0]
    g = gf_pow(f, e, p, ZZ)
    h = gf_quo(high_first, g, p, ZZ)
    s, _, one = gf_gcdex(g, h, p, ZZ)
    assert one == [1]
    proj = gf_rem(gf_mul(s, g, p, ZZ), high_first, p, ZZ)
    low_first = [int(c) for c in reversed(proj)]
    return {v: _poly_at(low_first, b, p) if b.shape[0] else b for v, b in blocks.items()}


def fitting_check(rep: Representation, trials: int = 64, seed: int = 0) -> FittingResult:
    """Search for a nontrivial idempotent via Fitting decompositions of random endomorphisms.

    A sampled endomorphism whose minimal polynomial has two coprime factors
    yields an idempotent; finding one certifies decomposability.
    """
    p = rep.p
    basis = end_basis(rep)
    if basis.dim <= 1:
        return FittingResult("probably_indecomposable", 0, seed)
    rng = np.random.default_rng(seed)
    for t in range(1, trials + 1):
        coeffs = rng.integers(0, p, size=basis.dim)
        blocks = {v: arr[0] for v, arr in basis.batch(coeffs[None]).items()}
        e = _idempotent_from(blocks, p)
        if e is None:
            continue
        idem = Morphism(rep, rep, {v: FieldMatrix._wrap(a, p) for v, a in e.items()})
        if (idem.is_morphism() and idem.after(idem) == idem and not idem.is_zero()
                and not idem.is_identity()):
            return FittingResult("decomposable", t, seed, idem)
    return FittingResult("probably_indecomposable", trials, seed)


# ---------------------------------------------------------------- isomorphism


@dataclass
class IsoResult:
    verdict: str  # "iso", "not_iso" or "probably_not_iso"
    reason: str
    witness: Morphism | None = None

    @property
    def is_iso(self) -> bool:
        return self.verdict == "iso"


def are_isomorphic(v: Representation, w: Representation, budget: int = DEFAULT_BUDGET,
                   seed: int = 0, trials: int = 64, chunk: int = 4096) -> IsoResult:
    """Decide V ~ W by searching Hom(V, W) for an invertible element.

    Random sampling runs first; when |Hom| fits the budget an exhaustive pass
    either finds a witness or proves that none exists.
    """
    _same_quiver(v, w)
    if v.dims != w.dims:
        return IsoResult("not_iso", "dimension vectors differ")
    if v.total_dim == 0:
        return IsoResult("iso", "both zero", v.identity())
    basis = hom_basis(v, w)
    if basis.dim == 0:
        return IsoResult("not_iso", "Hom(V, W) = 0")
    p = v.p
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, p, size=(trials, basis.dim))
    ok = _all_invertible(basis.batch(coeffs), p, trials)
    if ok.any():
        f = basis.combine(coeffs[int(np.flatnonzero(ok)[0])])
        return IsoResult("iso", "invertible element of Hom(V, W) found by sampling", f)
    if p**basis.dim > budget:
        return IsoResult("probably_not_iso", f"no invertible among {trials} samples; |Hom| = {p}^{basis.dim} exceeds budget")
    for coeffs in _enumerate_coefficients(p, basis.dim, chunk):
        ok = _all_invertible(basis.batch(coeffs), p, len(coeffs))
        if ok.any():
            f = basis.combine(coeffs[int(np.flatnonzero(ok)[0])])
            return IsoResult("iso", "invertible element of Hom(V, W) found by enumeration", f)
    return IsoResult("not_iso", f"all {p}^{basis.dim} elements of Hom(V, W) are singular")


def verify_iso_witness(f: Morphism) -> bool:
    return f.is_morphism() and f.is_invertible()


# ---------------------------------------------------------------- standard shapes


def _check_orientation(n: int, tau: str) -> str:
    if n < 1:
        raise ValueError(f"need at least one vertex, got n={n}")
    if len(tau) != n - 1 or set(tau) - {"f", "b"}:
        raise ValueError(f"orientation must be a word of length {n - 1} over 'f'/'b', got {tau!r}")
    return tau


def linear_quiver(n: int, tau: str | None = None) -> BoundQuiver:
    """Type A_n with vertices "1".."n"; letter i of tau orients arrow a{i}."""
    tau = _check_orientation(n, "f" * (n - 1) if tau is None else tau)
    arrows = []
    for i, t in enumerate(tau, start=1):
        s, d = (str(i), str(i + 1)) if t == "f" else (str(i + 1), str(i))
        arrows.append(Arrow(f"a{i}", s, d))
    return BoundQuiver([str(i) for i in range(1, n + 1)], arrows, name=f"A{n}({tau})")


def ladder_quiver(n: int, tau: str | None = None) -> BoundQuiver:
    """Commutative ladder: rows "b1".."bn" and "t1".."tn", verticals b{i} -> t{i}."""
    tau = _check_orientation(n, "f" * (n - 1) if tau is None else tau)
    verts = [f"b{i}" for i in range(1, n + 1)] + [f"t{i}" for i in range(1, n + 1)]
    arrows, rels = [], []
    for i in range(1, n + 1):
        arrows.append(Arrow(f"v{i}", f"b{i}", f"t{i}"))
    for row in "bt":
        for i, t in enumerate(tau, start=1):
            s, d = (i, i + 1) if t == "f" else (i + 1, i)
            arrows.append(Arrow(f"{row}.a{i}", f"{row}{s}", f"{row}{d}"))
    for i, t in enumerate(tau, start=1):
        s, d = (i, i + 1) if t == "f" else (i + 1, i)
        rels.append(((f"v{s}", f"t.a{i}"), (f"b.a{i}", f"v{d}")))
    return BoundQuiver(verts, arrows, rels, name=f"CL{n}({tau})")


def _ladder_shape(q: BoundQuiver) -> tuple[int, str]:
    n = len(q.vertices) // 2
    tau = "".join("f" if q.arrow(f"b.a{i}").src == f"b{i}" else "b" for i in range(1, n))
    if q != ladder_quiver(n, tau):
        raise QuiverMismatch(f"{q!r} is not a commutative ladder")
    return n, tau


def ladder_split(rep: Representation) -> tuple[Representation, Representation, Morphism]:
    """Bottom row, top row and the vertical morphism bottom -> top."""
    try:
        n, tau = _ladder_shape(rep.quiver)
    except KeyError as exc:
        raise QuiverMismatch(f"{rep.quiver!r} is not a commutative ladder") from exc
    line = linear_quiver(n, tau)
    rows = {}
    for row in "bt":
        dims = {str(i): rep.dims[f"{row}{i}"] for i in range(1, n + 1)}
        maps = {f"a{i}": rep.maps[f"{row}.a{i}"] for i in range(1, n)}
        rows[row] = Representation(line, rep.p, dims, maps)
    vert = Morphism(rows["b"], rows["t"], {str(i): rep.maps[f"v{i}"] for i in range(1, n + 1)})
    return rows["b"], rows["t"], vert


def ladder_join(bottom: Representation, top: Representation, vertical: Morphism) -> Representation:
    _same_quiver(bottom, top)
    n = len(bottom.quiver.vertices)
    try:
        tau = "".join("f" if bottom.quiver.arrow(f"a{i}").src == str(i) else "b" for i in range(1, n))
    except KeyError as exc:
        raise QuiverMismatch("ladder rows must be linear quivers") from exc
    if bottom.quiver != linear_quiver(n, tau):
        raise QuiverMismatch("ladder rows must be linear quivers")
    q = ladder_quiver(n, tau)
    dims = {f"{r}{i}": rep.dims[str(i)] for r, rep in (("b", bottom), ("t", top)) for i in range(1, n + 1)}
    maps = {f"{r}.a{i}": rep.maps[f"a{i}"] for r, rep in (("b", bottom), ("t", top)) for i in range(1, n)}
    maps.update({f"v{i}": vertical[str(i)] for i in range(1, n + 1)})
    return Representation(q, bottom.p, dims, maps)
