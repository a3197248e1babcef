"""Brute-force checks: chord quadrature, vertex regularity, standalone inequalities."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace

import numpy as np

from .arc_geometry import ArcEdge, ArcPath, Point
from .candidates import (
    BandLensParams,
    CandidateInstance,
    ChainParamsEqual,
    ChainParamsUnequal,
    DoubleBandParams,
    HexTilingParams,
    Kind,
    SdbParams,
    chain_eval_unequal,
    forward,
    sdb_evaluate,
)
from .errors import DomainError
from .geometry import CandidateGeometry, Interface, candidate_geometry
from .torus import FlatTorus, Space, torus_area

DEFAULT_N = 20_000
VERTEX_TOL = 1e-9


def _edge_points(e: ArcEdge, n: int) -> np.ndarray:
    """Points along the edge, endpoints included exactly: n chords per arc, one per segment.

    The chord from the start to the point at arc fraction t has length
    C sin(bt)/sin(b) and leaves at angle b(1 - t) from the chord, which stays
    well conditioned for tiny bulges.
    """
    if e.bulge == 0.0:
        return np.array([e.start, e.end], dtype=float)
    b = e.bulge
    t = np.linspace(0.0, 1.0, n + 1)
    rho = e.chord * np.sin(b * t) / math.sin(b)
    ux, uy = e.direction
    ang = b * (1 - t)
    c, s = np.cos(ang), np.sin(ang)
    pts = np.column_stack([e.start[0] + rho * (c * ux - s * uy), e.start[1] + rho * (s * ux + c * uy)])
    pts[0], pts[-1] = e.start, e.end
    return pts


def polygonalize(path: ArcPath, n: int) -> np.ndarray:
    """Vertices of the inscribed polygon with n chords per arc."""
    parts = [_edge_points(e, n)[:-1] for e in path.edges]
    if not path.closed:
        parts.append(np.asarray([path.edges[-1].end]))
    return np.concatenate(parts)


def quadrature_area(path: ArcPath, n: int = DEFAULT_N) -> float:
    if n < 16:
        raise DomainError("n must be at least 16")
    if not path.closed:
        raise DomainError("area of an open path is undefined")
    p = polygonalize(path, n)
    x, y = p[:, 0], p[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def quadrature_length(path: ArcPath, n: int = DEFAULT_N) -> float:
    if n < 16:
        raise DomainError("n must be at least 16")
    p = polygonalize(path, n)
    if path.closed:
        p = np.vstack([p, p[:1]])
    return float(np.sum(np.hypot(np.diff(p[:, 0]), np.diff(p[:, 1]))))


def geometry_quadrature(g: CandidateGeometry, n: int = DEFAULT_N) -> tuple[dict[int, float], float]:
    """Region areas and total interface length of a geometry by quadrature."""
    areas = {lab: g.scale * sum(quadrature_area(p, n) for p in paths) for lab, paths in g.regions.items()}
    length = g.scale * sum(quadrature_length(ArcPath([i.edge], closed=False), n) for i in g.interfaces)
    return areas, length


# ---------------------------------------------------------------- regularity


@dataclass
class RegularityReport:
    max_angle_error: float
    cocycle_residual: float
    curvature_consistency: float
    vertices: int = 0
    degrees: list[int] = field(default_factory=list)

    def ok(self, tol: float = 1e-9) -> bool:
        return max(self.max_angle_error, self.cocycle_residual, self.curvature_consistency) <= tol


@dataclass
class _End:
    point: Point
    tangent: Point  # unit, pointing away from the vertex
    curvature: float  # of the edge oriented away from the vertex
    left: int
    right: int


def _ends(iface: Interface) -> list[_End]:
    e = iface.edge
    r = e.reversed()
    return [
        _End(e.start, e.start_tangent(), e.curvature, iface.left, iface.right),
        _End(r.start, r.start_tangent(), r.curvature, iface.right, iface.left),
    ]


def _same_vertex(p: Point, q: Point, periods: tuple[Point, ...]) -> bool:
    dx, dy = q[0] - p[0], q[1] - p[1]
    if len(periods) == 2:
        (ux, uy), (vx, vy) = periods
        det = ux * vy - uy * vx
        a = (dx * vy - dy * vx) / det
        b = (ux * dy - uy * dx) / det
        a -= round(a)
        b -= round(b)
        dx, dy = a * ux + b * vx, a * uy + b * vy
    else:
        (ux, uy), = periods
        k = round((dx * ux + dy * uy) / (ux * ux + uy * uy))
        dx, dy = dx - k * ux, dy - k * uy
    return math.hypot(dx, dy) <= VERTEX_TOL


def vertex_groups(g: CandidateGeometry) -> list[list[_End]]:
    """Interface ends grouped by the vertex of the quotient surface they touch."""
    groups: list[list[_End]] = []
    for iface in g.interfaces:
        for end in _ends(iface):
            for grp in groups:
                if _same_vertex(grp[0].point, end.point, g.periods):
                    grp.append(end)
                    break
            else:
                groups.append([end])
    return groups


def _angle_between(a: Point, b: Point) -> float:
    """Counterclockwise angle from a to b in [0, 2pi)."""
    ang = math.atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1])
    return ang % (2 * math.pi)


def check_regularity(g: CandidateGeometry) -> RegularityReport:
    """Angles, curvature cocycle and pressure consistency of a boundary network."""
    angle_err = 0.0
    cocycle = 0.0
    degrees = []
    for grp in vertex_groups(g):
        k = len(grp)
        degrees.append(k)
        if k not in (2, 3):
            raise DomainError(f"vertex at {grp[0].point} has {k} incident edges")
        base = grp[0].tangent
        grp = sorted(grp, key=lambda e: _angle_between(base, e.tangent))
        target = 2 * math.pi / k
        for a, b in zip(grp, grp[1:] + grp[:1]):
            gap = _angle_between(a.tangent, b.tangent)
            angle_err = max(angle_err, abs(gap - target))
            # the region between a and its counterclockwise successor b
            if a.left != b.right:
                raise DomainError(f"unmatched interface labels at {a.point}: {a.left} vs {b.right}")
        cocycle = max(cocycle, abs(sum(e.curvature for e in grp)))
    pairs: dict[tuple[int, int], list[float]] = {}
    for iface in g.interfaces:
        k = iface.edge.curvature
        pairs.setdefault((iface.left, iface.right), []).append(k)
        pairs.setdefault((iface.right, iface.left), []).append(-k)
    spread = max((max(v) - min(v) for v in pairs.values()), default=0.0)
    return RegularityReport(angle_err, cocycle, spread, len(degrees), degrees)


def perturb_vertex(g: CandidateGeometry, vertex: int = 0, delta: Point = (1e-3, 0.0)) -> CandidateGeometry:
    """Move one vertex of the network (all incident edge ends) by ``delta``, bulges kept."""
    target = vertex_groups(g)[vertex][0].point

    def shift(p):
        # translate the offset to the lift of the vertex that p sits on
        if not _same_vertex(p, target, g.periods):
            return p
        return (p[0] + delta[0], p[1] + delta[1])

    new = []
    for iface in g.interfaces:
        e = iface.edge
        new.append(replace(iface, edge=ArcEdge(shift(e.start), shift(e.end), e.bulge)))
    return replace(g, interfaces=new)


# ---------------------------------------------------------------- inequalities


def g_function(theta: float) -> float:
    return math.pi * math.sin(2 * theta) + 3 * math.sqrt(3) * theta - 3 * math.pi * math.sin(theta)


def octagon_square_quotient(phi: float) -> float:
    m = max(phi, math.pi / 2 - phi)
    num = max(2.0, 1 + 2 * math.cos(phi)) * (1 + math.sin(phi)) - 3
    return num / (math.sin(m / 2) + math.cos(m / 2) - 1)


@dataclass
class InequalityReport:
    g_min: float
    g_argmin: float
    octagon_min_margin: float
    octagon_argmin: float
    octagon_at_pi3: float
    octagon_margin_away: float  # min margin at distance >= 0.01 from pi/3
    samples: int

    @property
    def ok(self) -> bool:
        return self.g_min > 0 and self.octagon_min_margin >= -1e-12 and self.octagon_margin_away > 0


def verify_inequalities(samples: int = 10_000) -> InequalityReport:
    if samples < 100:
        raise DomainError("samples must be at least 100")
    th = [math.pi / 3 * k / (samples + 1) for k in range(1, samples + 1)]
    gv = [g_function(t) for t in th]
    gi = min(range(samples), key=gv.__getitem__)
    lo = math.acos(7 / 9)
    phis = [lo + (math.pi / 2 - lo) * k / (samples - 1) for k in range(samples)]
    phis.append(math.pi / 3)
    qv = [octagon_square_quotient(p) - 2 for p in phis]
    qi = min(range(len(phis)), key=qv.__getitem__)
    away = min(q for p, q in zip(phis, qv) if abs(p - math.pi / 3) >= 0.01)
    return InequalityReport(gv[gi], th[gi], qv[qi], phis[qi],
                            octagon_square_quotient(math.pi / 3), away, samples)


# ---------------------------------------------------------------- family certification


def random_instance(kind: Kind, rng: random.Random) -> tuple[CandidateInstance, Space]:
    """A random feasible instance of ``kind`` together with a torus it lives on."""
    square = FlatTorus()
    while True:
        if kind is Kind.STANDARD_DOUBLE_BUBBLE:
            p = SdbParams(rng.uniform(0.0, 1.0), rng.uniform(0.05, 0.35))
            space = square
        elif kind is Kind.STANDARD_CHAIN:
            if rng.random() < 0.5:
                p = ChainParamsEqual(1.0, rng.uniform(0.01, 0.4))
            else:
                c1 = rng.uniform(0.02, 0.48)
                lo = math.asin(c1)
                p = ChainParamsUnequal(1.0, lo + rng.uniform(0.02, 0.98) * (math.pi / 6 - lo), c1)
                if chain_eval_unequal(p).c3 < 1e-3:
                    continue
            space = square
        elif kind is Kind.BAND_LENS:
            r = rng.uniform(0.05, 0.55)
            p = BandLensParams(r, rng.uniform(r / 2 + 0.01, 0.6))
            space = square
            if not 1.0 - p.d > r / 2 + 0.01:
                continue
        elif kind is Kind.DOUBLE_BAND:
            p = DoubleBandParams(rng.uniform(0.02, 0.6), rng.uniform(0.02, 0.6))
            space = square
        elif kind is Kind.HEXAGON_TILING:
            w = [rng.uniform(0.02, 1.0) for _ in range(3)]
            a, b = w[0] / sum(w), w[1] / sum(w)
            p = HexTilingParams(a, b, 1.0 - a - b)
            space = FlatTorus.hexagonal()
        else:
            raise ValueError(kind)
        vals = forward(kind, p)
        total = torus_area(space)
        a1, a2 = vals[0], vals[1]
        if kind is Kind.STANDARD_DOUBLE_BUBBLE and sdb_evaluate(p).diameter >= 0.95:
            continue
        if a1 + a2 >= 0.95 * total:
            continue
        return CandidateInstance(kind, p, (a1, a2, total - a1 - a2), vals[-1]), space


@dataclass
class Certificate:
    kind: Kind
    area_error: float  # max relative error over the three regions
    perimeter_error: float


def certify(inst: CandidateInstance, space: Space, n: int = DEFAULT_N) -> Certificate:
    """Compare closed-form areas and perimeter with chord quadrature of the drawn geometry."""
    g = candidate_geometry(inst, space)
    areas, length = geometry_quadrature(g, n)
    err = 0.0
    for label, a in areas.items():
        want = inst.areas[{1: 0, 2: 1, 0: 2}[label]]
        err = max(err, abs(a - want) / want)
    return Certificate(inst.kind, err, abs(length - inst.perimeter) / inst.perimeter)
