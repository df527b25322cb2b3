"""Finite simplicial complexes, simplicial maps and homology over F_p."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .exactalg import DEFAULT_PRIME, FieldMatrix, check_prime
from .quiver import BoundQuiver, Representation

Simplex = tuple


class NotSimplicial(ValueError):
    """A vertex map sends some simplex outside the target complex."""


class NotACycle(ValueError):
    """A chain passed for homology coordinates has nonzero boundary."""


class SimplicialComplex:
    """Abstract simplicial complex stored as sorted vertex tuples by dimension."""

    def __init__(self, simplices: Iterable[Sequence[Hashable]], vertices: Iterable[Hashable] = (),
                 maxdim: int | None = None):
        faces: set[Simplex] = {(v,) for v in vertices}
        for s in simplices:
            s = tuple(sorted(set(s)))
            if not s:
                continue
            top = len(s) if maxdim is None else min(len(s), maxdim + 1)
            for k in range(1, top + 1):
                faces.update(itertools.combinations(s, k))
        by_dim: dict[int, list[Simplex]] = {}
        for s in faces:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self.simplices = {k: sorted(v) for k, v in sorted(by_dim.items())}
        self._index = {k: {s: i for i, s in enumerate(v)} for k, v in self.simplices.items()}

    @property
    def vertices(self) -> list[Hashable]:
        return [s[0] for s in self.simplices.get(0, [])]

    @property
    def dim(self) -> int:
        return max(self.simplices, default=-1)

    def count(self, k: int) -> int:
        return len(self.simplices.get(k, ()))

    def __len__(self) -> int:
        return sum(len(v) for v in self.simplices.values())

    def index(self, k: int) -> dict[Simplex, int]:
        return self._index.get(k, {})

    def __contains__(self, s: Sequence) -> bool:
        s = tuple(sorted(s))
        return s in self._index.get(len(s) - 1, {})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.simplices == other.simplices

    def __repr__(self) -> str:
        counts = ", ".join(f"{k}:{len(v)}" for k, v in self.simplices.items())
        return f"SimplicialComplex({counts})"

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(s in other._index.get(k, {}) for k, ss in self.simplices.items() for s in ss)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(v) for k, v in self.simplices.items())

    def to_json(self) -> dict:
        return {"vertices": self.vertices,
                "simplices": {str(k): [list(s) for s in v] for k, v in self.simplices.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> "SimplicialComplex":
        simplices = [s for v in data.get("simplices", {}).values() for s in v]
        return cls(simplices, data.get("vertices", ()))


def clique_complex(vertices: Iterable[Hashable], edges: Iterable[tuple], maxdim: int = 2) -> SimplicialComplex:
    """Flag complex of a graph, truncated at ``maxdim``."""
    verts = sorted(set(vertices))
    higher: dict[Hashable, set] = {v: set() for v in verts}
    for a, b in edges:
        if a == b:
            continue
        a, b = min(a, b), max(a, b)
        higher[a].add(b)
    found: list[Simplex] = []

    def grow(clique: tuple, cands: set) -> None:
        found.append(clique)
        if len(clique) > maxdim:
            return
        for v in sorted(cands):
            grow(clique + (v,), cands & higher[v])

    for v in verts:
        grow((v,), set(higher[v]))
    return SimplicialComplex(found, verts)


def boundary_matrix(X: SimplicialComplex, k: int, p: int = DEFAULT_PRIME) -> FieldMatrix:
    """Dense matrix of the boundary from k-chains to (k-1)-chains."""
    rows = X.simplices.get(k - 1, []) if k > 0 else []
    cols = X.simplices.get(k, [])
    m = np.zeros((len(rows), len(cols)), dtype=np.int64)
    if k > 0:
        idx = X.index(k - 1)
        for j, s in enumerate(cols):
            for i in range(len(s)):
                m[idx[s[:i] + s[i + 1:]], j] = (-1) ** i
    return FieldMatrix(m, p, rows=len(rows), cols=len(cols))


# ---------------------------------------------------------------- sparse column reduction

Column = dict  # row index -> nonzero coefficient mod p


def _sparse_boundary(X: SimplicialComplex, k: int, p: int) -> list[Column]:
    if k == 0:
        return [{} for _ in X.simplices.get(0, [])]
    idx = X.index(k - 1)
    out = []
    for s in X.simplices.get(k, []):
        col = {}
        for i in range(len(s)):
            col[idx[s[:i] + s[i + 1:]]] = 1 if i % 2 == 0 else p - 1
        out.append(col)
    return out


def _axpy(y: Column, a: int, x: Column, p: int) -> None:
    """y <- y + a x, in place."""
    for r, v in x.items():
        w = (y.get(r, 0) + a * v) % p
        if w:
            y[r] = w
        else:
            y.pop(r, None)


@dataclass
class HomologyBasis:
    """Basis of H_k(X; F_p) with data for reading off coordinates of cycles."""

    complex: SimplicialComplex
    degree: int
    p: int
    representatives: list[Column]
    # pivot row -> (reduced vector, homology coordinates of that vector)
    _table: dict[int, tuple[Column, Column]] = field(repr=False, default_factory=dict)

    @property
    def betti(self) -> int:
        return len(self.representatives)

    def representative_chains(self) -> list[dict[Simplex, int]]:
        simp = self.complex.simplices.get(self.degree, [])
        return [{simp[i]: c for i, c in sorted(z.items())} for z in self.representatives]

    def coordinates(self, chain: Column) -> list[int]:
        """Coordinates of the class of a cycle, given on simplex indices."""
        p = self.p
        z = dict(chain)
        coords: Column = {}
        while z:
            low = max(z)
            hit = self._table.get(low)
            if hit is None:
                raise NotACycle(f"chain is not a cycle in degree {self.degree}")
            vec, c = hit
            a = (-z[low] * pow(vec[low], p - 2, p)) % p
            _axpy(z, a, vec, p)
            _axpy(coords, -a % p, c, p)
        return [coords.get(h, 0) for h in range(self.betti)]


def homology(X: SimplicialComplex, k: int, p: int = DEFAULT_PRIME) -> HomologyBasis:
    """Homology in degree k with chosen cycle representatives."""
    p = check_prime(p)
    nk = X.count(k)
    # cycles: reduce the degree-k boundary while tracking column operations
    cycles: list[Column] = []
    pivots: dict[int, tuple[Column, Column]] = {}
    for j, col in enumerate(_sparse_boundary(X, k, p)):
        col = dict(col)
        track = {j: 1}
        while col:
            low = max(col)
            hit = pivots.get(low)
            if hit is None:
                break
            pcol, ptrack = hit
            a = (-col[low] * pow(pcol[low], p - 2, p)) % p
            _axpy(col, a, pcol, p)
            _axpy(track, a, ptrack, p)
        if col:
            pivots[max(col)] = (col, track)
        else:
            cycles.append(track)
    # boundaries: reduce the degree-(k+1) boundary
    table: dict[int, tuple[Column, Column]] = {}
    for col in _sparse_boundary(X, k + 1, p) if X.count(k + 1) else []:
        col = dict(col)
        while col:
            low = max(col)
            hit = table.get(low)
            if hit is None:
                table[low] = (col, {})
                break
            pcol, _ = hit
            a = (-col[low] * pow(pcol[low], p - 2, p)) % p
            _axpy(col, a, pcol, p)
    reps: list[Column] = []
    for z in cycles:
        vec = dict(z)
        coords: Column = {}
        while vec:
            low = max(vec)
            hit = table.get(low)
            if hit is None:
                break
            pvec, pc = hit
            a = (-vec[low] * pow(pvec[low], p - 2, p)) % p
            _axpy(vec, a, pvec, p)
            _axpy(coords, a, pc, p)
        if vec:
            h = len(reps)
            reps.append(z)
            # [vec] = [z] + sum a [pivot] = e_h + coords
            c = {h: 1}
            _axpy(c, 1, coords, p)
            table[max(vec)] = (vec, c)
    assert all(len(z) <= nk for z in reps)
    return HomologyBasis(X, k, p, reps, table)


def betti_numbers(X: SimplicialComplex, p: int = DEFAULT_PRIME, maxdim: int | None = None) -> list[int]:
    top = X.dim if maxdim is None else maxdim
    return [homology(X, k, p).betti for k in range(top + 1)]


# ---------------------------------------------------------------- maps and diagrams


class SimplicialMap:
    """Vertex map between complexes that sends simplices to simplices."""

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, vertex_map: Mapping[Hashable, Hashable]):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        missing = [v for v in source.vertices if v not in self.vertex_map]
        if missing:
            raise NotSimplicial(f"vertex map undefined on {missing[:5]}")
        for k, ss in source.simplices.items():
            for s in ss:
                img = tuple(sorted({self.vertex_map[v] for v in s}))
                if img not in target:
                    raise NotSimplicial(f"simplex {s} maps to {img}, not in target")

    @classmethod
    def inclusion(cls, source: SimplicialComplex, target: SimplicialComplex) -> "SimplicialMap":
        return cls(source, target, {v: v for v in source.vertices})

    def compose_vertices(self, after: "SimplicialMap") -> dict:
        """Vertex map of ``after o self``."""
        return {v: after.vertex_map[w] for v, w in self.vertex_map.items()}

    def push_chain(self, chain: Column, k: int, p: int) -> Column:
        """Image of a k-chain (on simplex indices) under the induced chain map."""
        src = self.source.simplices[k]
        idx = self.target.index(k)
        out: Column = {}
        for i, c in chain.items():
            img = [self.vertex_map[v] for v in src[i]]
            if len(set(img)) < len(img):
                continue
            order = sorted(range(len(img)), key=lambda t: img[t])
            sign = _perm_sign(order)
            j = idx[tuple(img[t] for t in order)]
            w = (out.get(j, 0) + sign * c) % p
            if w:
                out[j] = w
            else:
                out.pop(j, None)
        return out


def _perm_sign(order: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def induced_map(f: SimplicialMap, k: int, p: int = DEFAULT_PRIME,
                src: HomologyBasis | None = None, dst: HomologyBasis | None = None) -> FieldMatrix:
    src = src or homology(f.source, k, p)
    dst = dst or homology(f.target, k, p)
    m = np.zeros((dst.betti, src.betti), dtype=np.int64)
    for j, z in enumerate(src.representatives):
        m[:, j] = dst.coordinates(f.push_chain(z, k, p))
    return FieldMatrix(m, p, rows=dst.betti, cols=src.betti)


@dataclass
class ComplexDiagram:
    """Complexes at the vertices of a bound quiver and simplicial maps on its arrows."""

    shape: BoundQuiver
    spaces: dict[str, SimplicialComplex]
    maps: dict[str, SimplicialMap]

    def validate(self) -> None:
        for a in self.shape.arrows:
            f = self.maps[a.id]
            if f.source is not self.spaces[a.src] and f.source != self.spaces[a.src]:
                raise ValueError(f"map on {a.id} has the wrong source")
            if f.target is not self.spaces[a.dst] and f.target != self.spaces[a.dst]:
                raise ValueError(f"map on {a.id} has the wrong target")
        for lhs, rhs in self.shape.relations:
            start = self.spaces[self.shape.arrow(lhs[0]).src].vertices
            if any(self._follow(lhs, v) != self._follow(rhs, v) for v in start):
                raise ValueError(f"relation {lhs} = {rhs} fails on vertices")

    def _follow(self, path, v):
        for a in path:
            v = self.maps[a].vertex_map[v]
        return v


def diagram_homology(diagram: ComplexDiagram, k: int, p: int = DEFAULT_PRIME) -> Representation:
    """Apply H_k(-; F_p) to a diagram of complexes."""
    bases = {v: homology(X, k, p) for v, X in diagram.spaces.items()}
    dims = {v: b.betti for v, b in bases.items()}
    maps = {a.id: induced_map(diagram.maps[a.id], k, p, bases[a.src], bases[a.dst]) for a in diagram.shape.arrows}
    return Representation(diagram.shape, p, dims, maps)
