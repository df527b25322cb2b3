"""Interval modules over type-A quivers and their Hom structure."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import total_ordering

from .exactalg import DEFAULT_PRIME, FieldMatrix, rank
from .quiver import Morphism, QuiverMismatch, Representation, hom_basis, linear_quiver


class ZeroHom(ValueError):
    """Raised when a canonical map is requested between intervals with Hom = 0."""


@total_ordering
@dataclass(frozen=True)
class Interval:
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError(f"empty interval [{self.a}, {self.b}]")

    def __lt__(self, other: "Interval") -> bool:
        return (self.a, self.b) < (other.a, other.b)

    def __contains__(self, i: int) -> bool:
        return self.a <= i <= self.b

    def __str__(self) -> str:
        return f"I[{self.a},{self.b}]"


def all_intervals(n: int) -> list[Interval]:
    return [Interval(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]


def all_orientations(n: int) -> list[str]:
    return ["".join(t) for t in itertools.product("fb", repeat=n - 1)]


def interval_rep(n: int, tau: str, iv: Interval, p: int = DEFAULT_PRIME) -> Representation:
    """K on the vertices of the interval, identities on the arrows inside it."""
    if not (1 <= iv.a <= iv.b <= n):
        raise ValueError(f"{iv} does not fit in 1..{n}")
    q = linear_quiver(n, tau)
    dims = {str(i): int(i in iv) for i in range(1, n + 1)}
    maps = {}
    for arr in q.arrows:
        s, t = int(arr.src), int(arr.dst)
        if s in iv and t in iv:
            maps[arr.id] = FieldMatrix.identity(1, p)
    return Representation(q, p, dims, maps)


def _forward_rank(rep: Representation, a: int, b: int) -> int:
    n = len(rep.quiver.vertices)
    if a < 1 or b > n:
        return 0
    if a == b:
        return rep.dims[str(a)]
    return rank(rep.path_matrix(tuple(f"a{i}" for i in range(a, b))))


def decompose_forward(rep: Representation) -> dict[Interval, int]:
    """Interval multiplicities of a representation of A_n with all arrows forward.

    Uses ranks of composite maps: m(a,b) = r(a,b) - r(a-1,b) - r(a,b+1) + r(a-1,b+1).
    """
    n = len(rep.quiver.vertices)
    if rep.quiver != linear_quiver(n, "f" * (n - 1)):
        raise QuiverMismatch(f"{rep.quiver!r} is not a forward-oriented type A quiver")
    cache: dict[tuple[int, int], int] = {}

    def r(a: int, b: int) -> int:
        if (a, b) not in cache:
            cache[(a, b)] = _forward_rank(rep, a, b)
        return cache[(a, b)]

    out = {}
    for iv in all_intervals(n):
        a, b = iv.a, iv.b
        m = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1)
        if m:
            out[iv] = m
    return out


def hom_dim(n: int, tau: str, src: Interval, dst: Interval, p: int = DEFAULT_PRIME) -> int:
    return hom_basis(interval_rep(n, tau, src, p), interval_rep(n, tau, dst, p)).dim


def hom_table(n: int, tau: str, p: int = DEFAULT_PRIME) -> dict[tuple[Interval, Interval], int]:
    ivs = all_intervals(n)
    reps = {iv: interval_rep(n, tau, iv, p) for iv in ivs}
    return {(x, y): hom_basis(reps[x], reps[y]).dim for x in ivs for y in ivs}


def forward_hom_nonzero(src: Interval, dst: Interval) -> bool:
    """Closed form for the forward orientation: Hom(I[a,b], I[c,d]) != 0 iff c <= a <= d <= b."""
    a, b, c, d = src.a, src.b, dst.a, dst.b
    return c <= a <= d <= b


def canonical_hom(n: int, src: Interval, dst: Interval, p: int = DEFAULT_PRIME, tau: str | None = None) -> Morphism:
    """Identity components on the overlap of the supports, zero elsewhere."""
    tau = "f" * (n - 1) if tau is None else tau
    v, w = interval_rep(n, tau, src, p), interval_rep(n, tau, dst, p)
    comps = {}
    for i in range(1, n + 1):
        both = i in src and i in dst
        comps[str(i)] = FieldMatrix.identity(1, p) if both else FieldMatrix.zeros(w.dims[str(i)], v.dims[str(i)], p)
    f = Morphism(v, w, comps)
    if f.is_zero() or not f.is_morphism():
        raise ZeroHom(f"Hom({src}, {dst}) = 0 over A{n}({tau})")
    return f


@dataclass(frozen=True)
class K22:
    """Two sources and two targets whose Hom pattern is the complete bipartite graph."""

    d1: Interval
    d2: Interval
    r1: Interval
    r2: Interval

    def as_tuple(self) -> tuple[Interval, Interval, Interval, Interval]:
        return (self.d1, self.d2, self.r1, self.r2)

    def __str__(self) -> str:
        return f"({self.d1}, {self.d2}; {self.r1}, {self.r2})"


def find_k22(n: int, tau: str | None = None, p: int = DEFAULT_PRIME, ordered: bool = False) -> list[K22]:
    """All K_{2,2} configurations among intervals of A_n(tau).

    Every D_i -> R_j has nonzero Hom while Hom vanishes both ways inside each
    pair.  By default each side is reported once, sorted; ``ordered=True``
    also lists the three swapped orderings of every configuration.
    """
    tau = "f" * (n - 1) if tau is None else tau
    table = hom_table(n, tau, p)
    ivs = all_intervals(n)

    def orth(x: Interval, y: Interval) -> bool:
        return table[(x, y)] == 0 and table[(y, x)] == 0

    found = []
    for d1, d2 in itertools.combinations(ivs, 2):
        if not orth(d1, d2):
            continue
        targets = [r for r in ivs if r not in (d1, d2) and table[(d1, r)] and table[(d2, r)]]
        for r1, r2 in itertools.combinations(targets, 2):
            if orth(r1, r2):
                found.append(K22(d1, d2, r1, r2))
    if not ordered:
        return found
    out = []
    for k in found:
        for ds in ((k.d1, k.d2), (k.d2, k.d1)):
            for rs in ((k.r1, k.r2), (k.r2, k.r1)):
                out.append(K22(*ds, *rs))
    return out
