"""Tile-based Vietoris-Rips realization and the simplicial sandal diagram.

Both rows are assembled in space: flat tiles lie in the plane z = 0 along the
x axis, and the standing tiles (C above, F below) sit in the plane of the
junction edge they are attached to, with the tile's first coordinate running
along that edge and its second coordinate pointing up.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complexes import ComplexDiagram, SimplicialComplex, SimplicialMap, clique_complex
from .exactalg import parse_rational
from .quiver import ladder_quiver

Point = tuple[Fraction, Fraction, Fraction]

TILE_NAMES = ("A", "B", "C", "D", "E", "Ebar", "F")

_CORNERS = ["(0,0)", "(0,5)", "(5,5)", "(5,0)"]

# local coordinates of points 5..13; points 1..4 are the corners above
_TILE_TABLE = {
    "A": ["(1.5,0)", "(3.5,0)", "(1.5,5)", "(3.5,5)", "(0,1.5)", "(0,3.5)", "(5,0.7)", "(5,4.3)", "(1.86,2.5)"],
    "B": ["(1.3,0)", "(3.7,0)", "(1.3,5)", "(3.7,5)", "(0,0.7)", "(0,4.3)", "(5,1.5)", "(5,3.5)", "(3,2.5)"],
    "C": ["(.7,0)", "(4.3,0)", "(1.5,5)", "(3.5,5)", "(0,1.5)", "(0,3.5)", "(5,1.5)", "(5,3.5)", "(2.5,2.9)"],
    "D": ["(1.3,0)", "(3.7,0)", "(1.3,5)", "(3.7,5)", "(0,1.3)", "(0,3.7)", "(5,.5)", "(5,4.5)", "(2,2.5)"],
    "E": ["(1.3,0)", "(3.7,0)", "(1.3,5)", "(3.7,5)", "(0,.5)", "(0,4.5)", "(5,1)", "(5,4)", "(3,2.5)"],
    "Ebar": ["(1.3,0)", "(3.7,0)", "(1.3,5)", "(3.7,5)", "(0,1)", "(0,4)", "(5,.5)", "(5,4.5)", "(2,2.5)"],
    "F": ["(.5,0)", "(4.5,0)", "(.7,5)", "(4.3,5)", "(0,1.3)", "(0,3.7)", "(5,1.3)", "(5,3.7)", "(2.5,3.5)"],
}

TILE_SIZE = Fraction(5)


class AmbiguityError(ValueError):
    """Shared boundary points disagree about their image under the vertex map."""


class GapViolation(ValueError):
    """An edge length falls inside a band that the stability argument needs empty."""


def _pair(text: str) -> tuple[Fraction, Fraction]:
    a, b = text.strip("() ").split(",")
    return parse_rational(a), parse_rational(b)


@dataclass(frozen=True)
class Tile:
    name: str
    points: tuple[tuple[Fraction, Fraction], ...]  # index i+1 -> local coordinates

    def point(self, index: int) -> tuple[Fraction, Fraction]:
        return self.points[index - 1]


def tile_points(name: str) -> Tile:
    if name not in _TILE_TABLE:
        raise ValueError(f"unknown tile {name!r}; choose from {TILE_NAMES}")
    pts = tuple(_pair(t) for t in _CORNERS + _TILE_TABLE[name])
    return Tile(name, pts)


@dataclass(frozen=True)
class TileInstance:
    tile: str
    repeat: int
    position: int  # 0 left flat tile, 1 right flat tile, 2 standing tile on their junction

    def __str__(self) -> str:
        return f"{self.tile}[{self.repeat}.{self.position}]"


@dataclass
class PointCloud:
    """Exact points in space with the tile copies each one came from."""

    points: dict[int, Point]
    provenance: dict[int, list[tuple[TileInstance, int]]]

    def __len__(self) -> int:
        return len(self.points)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["id", "x_num", "x_den", "y_num", "y_den", "z_num", "z_den", "provenance"])
        for i, pt in self.points.items():
            prov = ";".join(f"{inst}#{k}" for inst, k in self.provenance[i])
            w.writerow([i] + [v for c in pt for v in (c.numerator, c.denominator)] + [prov])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "points": {str(i): [str(c) for c in pt] for i, pt in self.points.items()},
            "provenance": {str(i): [[str(inst), k] for inst, k in pv] for i, pv in self.provenance.items()},
        }


def _place(position: int, offset: Fraction, u: Fraction, v: Fraction) -> Point:
    if position == 0:
        return (offset + u, v, Fraction(0))
    if position == 1:
        return (offset + TILE_SIZE + u, v, Fraction(0))
    # standing tile on the junction line x = offset + 5
    return (offset + TILE_SIZE, u, v)


def row_tiles(row: str, d: int) -> list[TileInstance]:
    if row not in ("upper", "lower"):
        raise ValueError(f"row must be 'upper' or 'lower', got {row!r}")
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    out = []
    for j in range(d):
        if row == "upper":
            names = ("A", "B", "C")
        else:
            names = ("D" if j == 0 else "Ebar", "E", "F")
        out += [TileInstance(n, j, pos) for pos, n in enumerate(names)]
    return out


def assemble(row: str, d: int) -> PointCloud:
    """Union of placed tile copies; coinciding points are merged exactly."""
    ids: dict[Point, int] = {}
    prov: dict[int, list[tuple[TileInstance, int]]] = {}
    for inst in row_tiles(row, d):
        tile = tile_points(inst.tile)
        offset = 2 * TILE_SIZE * inst.repeat
        for k, (u, v) in enumerate(tile.points, start=1):
            pt = _place(inst.position, offset, u, v)
            i = ids.setdefault(pt, len(ids))
            prov.setdefault(i, []).append((inst, k))
    return PointCloud({i: pt for pt, i in ids.items()}, prov)


_SLOT_PARTNER = {"D": "A", "Ebar": "A", "E": "B", "F": "C"}


def vertex_map(lower: PointCloud, upper: PointCloud) -> dict[int, int]:
    """Send each lower point to the same-index point of the matching upper tile copy."""
    where = {(inst.tile, inst.repeat, inst.position, k): i
             for i, pv in upper.provenance.items() for inst, k in pv}
    out = {}
    for i, pv in lower.provenance.items():
        images = {where[(_SLOT_PARTNER[inst.tile], inst.repeat, inst.position, k)] for inst, k in pv}
        if len(images) != 1:
            raise AmbiguityError(f"lower point {i} from {[str(x) for x, _ in pv]} has images {sorted(images)}")
        out[i] = images.pop()
    return out


# ---------------------------------------------------------------- Vietoris-Rips


def _scaled(P: PointCloud) -> tuple[dict[int, tuple[int, ...]], int]:
    den = 1
    for pt in P.points.values():
        for c in pt:
            den = den * c.denominator // math.gcd(den, c.denominator)
    return {i: tuple(int(c * den) for c in pt) for i, pt in P.points.items()}, den


def squared_lengths(P: PointCloud) -> dict[tuple[int, int], Fraction]:
    pts, den = _scaled(P)
    out = {}
    for (i, p), (j, q) in itertools.combinations(sorted(pts.items()), 2):
        out[(i, j)] = Fraction(sum((a - b) ** 2 for a, b in zip(p, q)), den * den)
    return out


def vr_edges(P: PointCloud, r: Fraction) -> list[tuple[int, int]]:
    """Pairs at distance strictly less than 2r."""
    r = parse_rational(r)
    pts, den = _scaled(P)
    # |p - q|^2 / den^2 < 4 r^2  <=>  |p - q|^2 * r.den^2 < 4 r.num^2 den^2
    bound = 4 * r.numerator**2 * den**2
    scale = r.denominator**2
    out = []
    for (i, p), (j, q) in itertools.combinations(sorted(pts.items()), 2):
        if sum((a - b) ** 2 for a, b in zip(p, q)) * scale < bound:
            out.append((i, j))
    return out


def vr_complex(P: PointCloud, r: Fraction, maxdim: int = 2) -> SimplicialComplex:
    return clique_complex(P.points, vr_edges(P, r), maxdim)


@dataclass(frozen=True)
class RadiusSchedule:
    lower: tuple[Fraction, ...]
    upper: tuple[Fraction, ...]
    radii: tuple[Fraction, ...]

    def widths(self) -> tuple[Fraction, ...]:
        return tuple(y - x for x, y in zip(self.lower, self.upper))

    def to_json(self) -> dict:
        return {k: [str(v) for v in getattr(self, k)] for k in ("lower", "upper", "radii")}


TABLE_LOWER = ("1.06", "1.21", "1.6", "1.8", "2")
TABLE_UPPER = ("1.12", "1.25", "1.665", "1.805", "2.015")


def default_schedule() -> RadiusSchedule:
    """The tabulated radius ranges with each radius at its interval's midpoint."""
    xs = tuple(parse_rational(x) for x in TABLE_LOWER)
    ys = tuple(parse_rational(y) for y in TABLE_UPPER)
    return RadiusSchedule(xs, ys, tuple((x + y) / 2 for x, y in zip(xs, ys)))


def with_radii(schedule: RadiusSchedule, radii: Sequence) -> RadiusSchedule:
    return RadiusSchedule(schedule.lower, schedule.upper, tuple(parse_rational(r) for r in radii))


def critical_radii(P: PointCloud, lo: Fraction, hi: Fraction) -> list[Fraction]:
    """Squared half-lengths h^2 with lo < h < hi; the complex changes at each such h."""
    lo, hi = parse_rational(lo), parse_rational(hi)
    found = {q / 4 for q in squared_lengths(P).values() if 4 * lo * lo < q < 4 * hi * hi}
    return sorted(found)


@dataclass
class ConstancyResult:
    interval: int
    constant: bool
    samples: list[Fraction]
    critical_squared_radii: list[Fraction]


def interval_constancy_check(P: PointCloud, schedule: RadiusSchedule | None = None,
                             samples_per_interval: int = 5, maxdim: int = 2) -> list[ConstancyResult]:
    """Compare the complexes at evenly spaced radii strictly inside each interval."""
    schedule = schedule or default_schedule()
    out = []
    for i, (x, y) in enumerate(zip(schedule.lower, schedule.upper), start=1):
        n = samples_per_interval
        samples = [x + (y - x) * Fraction(k, n + 1) for k in range(1, n + 1)]
        cxs = [vr_complex(P, r, maxdim) for r in samples]
        same = all(c == cxs[0] for c in cxs[1:])
        out.append(ConstancyResult(i, same, samples, critical_radii(P, x, y)))
    return out


def refined_schedule(d: int, schedule: RadiusSchedule | None = None) -> RadiusSchedule:
    """Shrink each interval to its widest sub-interval free of critical radii in either row.

    Endpoints are rational and lie strictly between consecutive critical
    radii, so the complexes are constant on every refined interval and each
    radius sits at the centre of its interval.
    """
    schedule = schedule or default_schedule()
    clouds = [assemble("upper", d), assemble("lower", d)]
    los, his = [], []
    for x, y in zip(schedule.lower, schedule.upper):
        crit = sorted({c for P in clouds for c in critical_radii(P, x, y)})
        cuts = [x] + [b for c in crit for b in _sqrt_bounds(c)] + [y]
        # consecutive (upper bound of one critical value, lower bound of the next)
        gaps = [(cuts[k], cuts[k + 1]) for k in range(0, len(cuts), 2)]
        lo, hi = max(gaps, key=lambda g: g[1] - g[0])
        los.append(lo)
        his.append(hi)
    return RadiusSchedule(tuple(los), tuple(his), tuple((a + b) / 2 for a, b in zip(los, his)))


# ---------------------------------------------------------------- the ladder diagram


@dataclass
class VRRealization:
    upper: PointCloud
    lower: PointCloud
    fmap: dict[int, int]
    schedule: RadiusSchedule
    diagram: ComplexDiagram


def build_cl5_vr_diagram(d: int, schedule: RadiusSchedule | None = None, maxdim: int = 2) -> VRRealization:
    """Rows are VR complexes at the scheduled radii; verticals come from the vertex map.

    Vertical maps are checked to be simplicial (NotSimplicial otherwise).
    """
    schedule = schedule or default_schedule()
    up, low = assemble("upper", d), assemble("lower", d)
    fmap = vertex_map(low, up)
    q = ladder_quiver(5, "ffff")
    spaces = {}
    for i, r in enumerate(schedule.radii, start=1):
        spaces[f"t{i}"] = vr_complex(up, r, maxdim)
        spaces[f"b{i}"] = vr_complex(low, r, maxdim)
    maps = {}
    for a in q.arrows:
        s, t = spaces[a.src], spaces[a.dst]
        maps[a.id] = SimplicialMap(s, t, fmap) if a.id.startswith("v") else SimplicialMap.inclusion(s, t)
    diagram = ComplexDiagram(q, spaces, maps)
    diagram.validate()
    return VRRealization(up, low, fmap, schedule, diagram)


def vertical_maps_are_inclusions(real: VRRealization) -> bool:
    """After renaming lower vertices by f, each lower complex sits inside the upper one."""
    for i in range(1, 6):
        low, up = real.diagram.spaces[f"b{i}"], real.diagram.spaces[f"t{i}"]
        for ss in low.simplices.values():
            for s in ss:
                img = {real.fmap[v] for v in s}
                if len(img) != len(s) or tuple(sorted(img)) not in up:
                    return False
    return len(set(real.fmap.values())) == len(real.fmap)


# ---------------------------------------------------------------- stability


def _sqrt_bounds(q: Fraction, digits: int = 12) -> tuple[Fraction, Fraction]:
    """Rational bounds lo <= sqrt(q) <= hi."""
    s = 10**digits
    n = q.numerator * q.denominator * s * s
    root = math.isqrt(n)
    lo = Fraction(root, q.denominator * s)
    hi = lo if root * root == n else Fraction(root + 1, q.denominator * s)
    return lo, hi


def gap_margin(q: Fraction, target: Fraction) -> Fraction:
    """Rational lower bound on |sqrt(q) - target| for target > 0."""
    _, hi = _sqrt_bounds(q)
    return abs(q - target * target) / (hi + target)


@dataclass
class GapReport:
    radius: Fraction
    margin: Fraction  # certified lower bound on distance from 2r to the nearest edge length
    nearest_pair: tuple[str, int, int]
    violations: list[tuple[str, int, int]]


@dataclass
class StabilityReport:
    d: int
    seed: int
    trials: int
    rho_table: Fraction
    rho: Fraction
    gaps: list[GapReport]
    unchanged: list[bool]
    adversarial_changed: bool
    adversarial_move: dict = field(default_factory=dict)

    @property
    def gap_certified(self) -> bool:
        return all(not g.violations for g in self.gaps) and self.rho >= self.rho_table

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "seed": self.seed,
            "trials": self.trials,
            "rho_table": str(self.rho_table),
            "rho_certified": str(self.rho),
            "rho_certified_float": float(self.rho),
            "gap_certified": self.gap_certified,
            "gaps": [{"radius": str(g.radius), "margin_float": float(g.margin),
                      "nearest_pair": list(g.nearest_pair),
                      "violations": [list(v) for v in g.violations]} for g in self.gaps],
            "perturbations_unchanged": self.unchanged,
            "adversarial_changed": self.adversarial_changed,
            "adversarial_move": self.adversarial_move,
        }


def certify_gaps(clouds: dict[str, PointCloud], schedule: RadiusSchedule, rho_table: Fraction) -> list[GapReport]:
    lengths = {name: squared_lengths(P) for name, P in clouds.items()}
    reports = []
    for r in schedule.radii:
        t = 2 * r
        best, where, bad = None, None, []
        for name, table in lengths.items():
            for (i, j), q in table.items():
                m = gap_margin(q, t)
                if best is None or m < best:
                    best, where = m, (name, i, j)
                if (t - rho_table) ** 2 < q < (t + rho_table) ** 2:
                    bad.append((name, i, j))
        reports.append(GapReport(r, best, where, bad))
    return reports


def _perturb(P: PointCloud, radius: Fraction, rng: random.Random, grid: int = 1000) -> PointCloud:
    pts = {}
    step = radius / grid
    for i, pt in P.points.items():
        while True:
            v = [rng.randint(-grid, grid) for _ in range(3)]
            if sum(c * c for c in v) <= grid * grid:
                break
        pts[i] = tuple(c + k * step for c, k in zip(pt, v))
    return PointCloud(pts, P.provenance)


def _row_complexes(P: PointCloud, schedule: RadiusSchedule, maxdim: int) -> list[SimplicialComplex]:
    return [vr_complex(P, r, maxdim) for r in schedule.radii]


def stability_harness(d: int, schedule: RadiusSchedule | None = None, trials: int = 20, seed: int = 0,
                      maxdim: int = 2, strict: bool = False) -> StabilityReport:
    """Perturb both clouds by at most 0.49 rho per point and compare all ten complexes.

    rho is the certified gap margin around the thresholds 2r_i, computed from
    the actual edge lengths.  With ``strict`` a GapViolation is raised when
    rho falls below the smallest tabulated interval width.
    """
    schedule = schedule or default_schedule()
    rho_table = min(schedule.widths())
    clouds = {"upper": assemble("upper", d), "lower": assemble("lower", d)}
    gaps = certify_gaps(clouds, schedule, rho_table)
    rho = min(g.margin for g in gaps)
    if strict and (rho < rho_table or any(g.violations for g in gaps)):
        raise GapViolation(f"certified margin {float(rho):.3g} below tabulated width {rho_table}")
    base = {name: _row_complexes(P, schedule, maxdim) for name, P in clouds.items()}
    rng = random.Random(seed)
    unchanged = []
    for _ in range(trials):
        moved = {name: _perturb(P, rho * Fraction(49, 100), rng) for name, P in clouds.items()}
        unchanged.append(all(_row_complexes(moved[n], schedule, maxdim) == base[n] for n in clouds))
    # push one endpoint of the tightest pair across its threshold
    g = min(gaps, key=lambda x: x.margin)
    name, i, j = g.nearest_pair
    P = clouds[name]
    pi, pj = P.points[i], P.points[j]
    q = sum((a - b) ** 2 for a, b in zip(pi, pj))
    _, l_hi = _sqrt_bounds(q)
    t = 2 * rho / l_hi
    sign = 1 if q < (2 * g.radius) ** 2 else -1
    new_pj = tuple(b + sign * t * (b - a) for a, b in zip(pi, pj))
    shifted = PointCloud({**P.points, j: new_pj}, P.provenance)
    changed = _row_complexes(shifted, schedule, maxdim) != base[name]
    move = {"cloud": name, "point": j, "towards_or_away": "away" if sign > 0 else "towards", "partner": i,
            "magnitude_bound": str(2 * rho)}
    return StabilityReport(d, seed, trials, rho_table, rho, gaps, unchanged, changed, move)


# ---------------------------------------------------------------- sandal


class _Sandal:
    """Vertex and cell names for the sole, hooks and straps of the sandal with d straps.

    Strap k stands over the sole at height 2k.  The sole is a ladder of
    rungs ``(Ia_j, Ib_j)`` at heights 2j+1 for j = -1..d-1 joined by a
    bottom and a top rail; strap k joins rail points Sa_k and Sb_k through
    Sc_k and Sd_k.  The up hook of k runs Sa_k, Ia_k, Ib_k, Sb_k and the
    down hook runs Sa_k, Ia_{k-1}, Ib_{k-1}, Sb_k.
    """

    def __init__(self, d: int):
        self.d = d

    @staticmethod
    def v(name: str, k: int) -> str:
        return f"{name}{k}"

    def rung(self, j: int) -> list[tuple]:
        return [(self.v("Ia", j), self.v("Ib", j))]

    def up_hook(self, k: int) -> list[tuple]:
        v = self.v
        return [(v("Sa", k), v("Ia", k)), (v("Ib", k), v("Sb", k))] + self.rung(k)

    def down_hook(self, k: int) -> list[tuple]:
        v = self.v
        return [(v("Sa", k), v("Ia", k - 1)), (v("Ib", k - 1), v("Sb", k))] + self.rung(k - 1)

    def strap(self, k: int) -> list[tuple]:
        v = self.v
        return [(v("Sb", k), v("Sc", k)), (v("Sc", k), v("Sd", k)), (v("Sd", k), v("Sa", k))]

    def fill_up(self, k: int) -> list[tuple]:
        v = self.v
        return [(v("Sa", k), v("Ia", k), v("Ib", k)), (v("Sa", k), v("Ib", k), v("Sb", k))]

    def fill_down(self, k: int) -> list[tuple]:
        v = self.v
        return [(v("Sa", k), v("Ia", k - 1), v("Ib", k - 1)), (v("Sa", k), v("Ib", k - 1), v("Sb", k))]

    def fill_strap(self, k: int) -> list[tuple]:
        v = self.v
        return [(v("Sa", k), v("Sb", k), v("Sc", k)), (v("Sa", k), v("Sc", k), v("Sd", k))]

    def union(self, *parts: str, drop_rungs: bool = False) -> SimplicialComplex:
        cells: list[tuple] = []
        for k in range(self.d):
            for part in parts:
                cells += getattr(self, part)(k)
        if drop_rungs:
            # keep only the rung at the far end of the sole
            cut = {tuple(self.rung(j)[0]) for j in range(-1, self.d - 1)}
            cells = [c for c in cells if tuple(c) not in cut]
        return SimplicialComplex(cells)


def sandal_diagram(d: int) -> ComplexDiagram:
    """Ten nested complexes modelling the sandal spaces, all maps inclusions.

    Top row: hooks with straps; full sandal twice; straps and down hooks
    filled; everything filled.  Bottom row: a point; full sandal with all
    but the last rung cut; full sandal twice; up and down hooks filled.
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    s = _Sandal(d)
    full = ("up_hook", "down_hook", "strap")
    hook_strap = SimplicialComplex([c for k in range(d) for c in s.up_hook(k) + s.strap(k)] + s.rung(-1))
    spaces = {
        "t1": hook_strap,
        "t2": s.union(*full),
        "t3": s.union(*full),
        "t4": s.union(*full, "fill_strap", "fill_down"),
        "t5": s.union(*full, "fill_strap", "fill_down", "fill_up"),
        "b1": SimplicialComplex([], [s.v("Sa", 0)]),
        "b2": s.union(*full, drop_rungs=True),
        "b3": s.union(*full),
        "b4": s.union(*full),
        "b5": s.union(*full, "fill_up", "fill_down"),
    }
    q = ladder_quiver(5, "ffff")
    maps = {a.id: SimplicialMap.inclusion(spaces[a.src], spaces[a.dst]) for a in q.arrows}
    diagram = ComplexDiagram(q, spaces, maps)
    diagram.validate()
    return diagram
