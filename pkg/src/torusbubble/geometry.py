"""Concrete arc geometry for candidate instances.

Every family is realized in the plane (a lift of the torus or cylinder):
each region gets closed paths whose signed areas add up to the region area,
and the boundary network is a list of labeled interface edges, each edge of
the quotient surface listed exactly once.  Seam edges of cut-open bands
appear only in region paths, never in the interface list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arc_geometry import ArcEdge, ArcPath, Point, path_area, polygon_path
from .candidates import (
    SQRT3,
    BandLensParams,
    CandidateInstance,
    ChainParamsEqual,
    ChainParamsUnequal,
    DoubleBandParams,
    HexTilingParams,
    Kind,
    SdbParams,
    chain_c3,
)
from .errors import DomainError, EmbeddingError
from .torus import Cylinder, FlatTorus, HomologyClass, Space, Strip, is_hexagonal


@dataclass(frozen=True)
class Interface:
    """A boundary edge with the user region labels on its left and right."""

    edge: ArcEdge
    left: int
    right: int

    def reversed(self) -> "Interface":
        return Interface(self.edge.reversed(), self.right, self.left)


@dataclass
class CandidateGeometry:
    kind: Kind
    space: Space
    regions: dict[int, list[ArcPath]]
    interfaces: list[Interface]
    periods: tuple[Point, ...]
    quotient: bool = False
    domain: ArcPath | None = None
    extras: dict = field(default_factory=dict)

    @property
    def scale(self) -> float:
        return 0.5 if self.quotient else 1.0

    def region_area(self, label: int) -> float:
        return self.scale * sum(path_area(p) for p in self.regions[label])

    @property
    def perimeter(self) -> float:
        return self.scale * sum(i.edge.length for i in self.interfaces)


def _rot(p: Point, e: Point) -> Point:
    """Map local coordinates (along e, along the left normal of e) to the plane."""
    return (p[0] * e[0] - p[1] * e[1], p[0] * e[1] + p[1] * e[0])


def _add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def _domain_path(space: Space) -> ArcPath | None:
    if not isinstance(space, FlatTorus):
        return None
    u, v = space.u, space.v
    return polygon_path([(0.0, 0.0), u, _add(u, v), v])


def _periods(space: Space) -> tuple[Point, ...]:
    if isinstance(space, FlatTorus):
        return (space.u, space.v)
    return ((1.0, 0.0),)


def _center(space: Space) -> Point:
    if isinstance(space, FlatTorus):
        u, v = space.u, space.v
        return (0.5 * (u[0] + v[0]), 0.5 * (u[1] + v[1]))
    return (0.0, 0.0)


def _complement(space: Space, holes: list[ArcPath]) -> list[ArcPath]:
    dom = _domain_path(space)
    return [dom] + [h.reversed() for h in holes]


def _sdb(inst: CandidateInstance, space: Space):
    p: SdbParams = inst.params
    th, C = p.theta, p.C
    hi, lo, ext = inst.roles
    cx, cy = _center(space)
    vl, vr = (cx - C / 2, cy), (cx + C / 2, cy)
    inner = ArcEdge(vl, vr, -th)
    top = ArcEdge(vl, vr, 2 * math.pi / 3 - th)
    bottom = ArcEdge(vl, vr, -(2 * math.pi / 3 + th))
    high_path = ArcPath([inner, top.reversed()])
    low_path = ArcPath([inner.reversed(), bottom])
    interfaces = [Interface(inner, hi, lo), Interface(top, ext, hi), Interface(bottom, lo, ext)]
    regions = {hi: [high_path], lo: [low_path]}
    if isinstance(space, FlatTorus):
        regions[ext] = _complement(space, [high_path, low_path])
    return regions, interfaces


def _chain(inst: CandidateInstance, space: Space):
    p = inst.params
    hi, lo, ext = inst.roles
    L0 = p.axis_length
    if isinstance(p, ChainParamsEqual):
        t1 = t2 = math.pi / 6
        t3 = 0.0
        c1 = L0 / 2
        c3 = p.c3
    else:
        t1 = p.theta1
        t2 = math.pi / 3 - t1
        t3 = math.pi / 6 - t1
        c1 = p.c1
        c3 = chain_c3(L0, t1, c1)
    if not c3 > 0:
        raise EmbeddingError("chain components touch at a point (C3 = 0)")
    direction: HomologyClass = p.direction
    if isinstance(space, FlatTorus):
        w = space.lattice_vector(direction.p, direction.q)
    else:
        w = (1.0, 0.0)
    if abs(math.hypot(*w) - L0) > 1e-9:
        raise EmbeddingError(f"axis length {L0} does not match direction {direction} on {space}")
    e = (w[0] / L0, w[1] / L0)
    o = _center(space)

    def P(x, y):
        return _add(o, _rot((x, y), e))

    h = c3 / 2
    a, b, c, d = P(-c1 / 2, -h), P(c1 / 2, -h), P(c1 / 2, h), P(-c1 / 2, h)
    a2, d2 = P(L0 - c1 / 2, -h), P(L0 - c1 / 2, h)
    hi_bot = ArcEdge(a, b, -t1)
    hi_top = ArcEdge(c, d, -t1)
    right_if = ArcEdge(b, c, -t3)
    left_if = ArcEdge(d, a, -t3)
    left_if_next = ArcEdge(d2, a2, -t3)
    lo_bot = ArcEdge(b, a2, -t2)
    lo_top = ArcEdge(d2, c, -t2)
    high_path = ArcPath([hi_bot, right_if, hi_top, left_if])
    low_path = ArcPath([lo_bot, left_if_next.reversed(), lo_top, right_if.reversed()])
    interfaces = [
        Interface(hi_bot, hi, ext), Interface(hi_top, hi, ext),
        Interface(right_if, hi, lo), Interface(left_if, hi, lo),
        Interface(lo_bot, lo, ext), Interface(lo_top, lo, ext),
    ]
    regions = {hi: [high_path], lo: [low_path]}
    if isinstance(space, FlatTorus):
        regions[ext] = _complement(space, [high_path, low_path])
    return regions, interfaces


def _band_lens(inst: CandidateInstance, space: Space):
    p: BandLensParams = inst.params
    lens, band, ext = inst.roles
    k = SQRT3 * p.r
    cx, cy = _center(space)
    x0 = cx - k / 2
    ll, lr, ll1 = (x0, cy), (x0 + k, cy), (x0 + 1.0, cy)
    upper = ArcEdge(ll, lr, math.pi / 3)
    lower = ArcEdge(ll, lr, -math.pi / 3)
    rest = ArcEdge(lr, ll1, 0.0)
    top = ArcEdge((x0, cy + p.d), (x0 + 1.0, cy + p.d), 0.0)
    lens_path = ArcPath([lower, upper.reversed()])
    band_path = ArcPath([
        upper, rest, ArcEdge(ll1, top.end), top.reversed(), ArcEdge(top.start, ll),
    ])
    interfaces = [
        Interface(upper, band, lens), Interface(lower, lens, ext),
        Interface(rest, band, ext), Interface(top, ext, band),
    ]
    regions = {lens: [lens_path], band: [band_path]}
    if isinstance(space, FlatTorus):
        y0 = cy + p.d - space.height
        if not y0 < cy - p.r / 2:
            raise EmbeddingError("lens does not fit in the exterior band")
        bl, br = (x0, y0), (x0 + 1.0, y0)
        regions[ext] = [ArcPath([
            ArcEdge(bl, br), ArcEdge(br, ll1), rest.reversed(), lower.reversed(), ArcEdge(ll, bl),
        ])]
    return regions, interfaces


def _strip_path(x0: float, y0: float, y1: float) -> ArcPath:
    return polygon_path([(x0, y0), (x0 + 1.0, y0), (x0 + 1.0, y1), (x0, y1)])


def _double_band(inst: CandidateInstance, space: Space):
    p: DoubleBandParams = inst.params
    b1, b2, ext = inst.roles
    y1, y2 = p.w1, p.w1 + p.w2
    lines = [ArcEdge((0.0, y), (1.0, y)) for y in (0.0, y1, y2)]
    interfaces = [Interface(lines[0], b1, ext), Interface(lines[1], b2, b1), Interface(lines[2], ext, b2)]
    regions = {b1: [_strip_path(0.0, 0.0, y1)], b2: [_strip_path(0.0, y1, y2)]}
    if isinstance(space, FlatTorus):
        if not y2 < space.height:
            raise EmbeddingError("bands exceed the torus")
        regions[ext] = [_strip_path(0.0, y2, space.height)]
    return regions, interfaces


_DIRS = [(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)]


def _walk(start: Point, steps: list[tuple[int, float]]) -> list[Point]:
    pts = [start]
    for k, length in steps:
        d = _DIRS[k % 6]
        pts.append((pts[-1][0] + length * d[0], pts[-1][1] + length * d[1]))
    return pts


def hexagon_vertices(p: HexTilingParams, origin: Point = (0.0, 0.0)):
    """Vertices (CCW, closing point repeated) of the three hexagons."""
    a, b, c = p.a, p.b, p.c
    h1 = _walk(origin, [(0, a), (1, b), (2, a), (3, b), (4, a), (5, b)])
    h2 = _walk(h1[2], [(4, b), (5, c), (0, b), (1, c), (2, b), (3, c)])
    h0 = _walk(h1[1], [(3, a), (4, c), (5, a), (0, c), (1, a), (2, c)])
    return h1, h2, h0


def _hex(inst: CandidateInstance, space: Space):
    p: HexTilingParams = inst.params
    if not (isinstance(space, FlatTorus) and is_hexagonal(space)):
        raise EmbeddingError("the standard hexagon tiling lives on the hexagonal torus only")
    if p.degenerate:
        raise EmbeddingError("degenerate hexagon tiling (a side length is zero)")
    r1, r2, r0 = inst.roles
    cx, cy = _center(space)
    # center the a|b hexagon in the domain
    a, b = p.a, p.b
    h1, _, _ = hexagon_vertices(p)
    mx = sum(q[0] for q in h1[:6]) / 6
    my = sum(q[1] for q in h1[:6]) / 6
    h1, h2, h0 = hexagon_vertices(p, (cx - mx, cy - my))
    paths = {}
    for label, pts in ((r1, h1), (r2, h2), (r0, h0)):
        paths[label] = ArcPath(ArcEdge(pts[i], pts[(i + 1) % 6]) for i in range(6))
    interfaces = []
    for i in range(6):
        other = r0 if i % 2 == 0 else r2
        interfaces.append(Interface(paths[r1].edges[i], r1, other))
    for i in (1, 3, 5):
        interfaces.append(Interface(paths[r2].edges[i], r2, r0))
    return {k: [v] for k, v in paths.items()}, interfaces


_BUILDERS = {
    Kind.STANDARD_DOUBLE_BUBBLE: _sdb,
    Kind.STANDARD_CHAIN: _chain,
    Kind.BAND_LENS: _band_lens,
    Kind.DOUBLE_BAND: _double_band,
    Kind.HEXAGON_TILING: _hex,
}


def candidate_geometry(inst: CandidateInstance, space: Space) -> CandidateGeometry:
    """Realize ``inst`` as closed region boundaries and a labeled interface network.

    Strip instances are drawn as the cylinder double bubble they are the
    reflection quotient of; areas and perimeter are then halved.
    """
    quotient = isinstance(space, Strip)
    base: Space = Cylinder() if quotient else space
    if not isinstance(base, (FlatTorus, Cylinder)):
        raise DomainError(f"unknown space {space!r}")
    regions, interfaces = _BUILDERS[inst.kind](inst, base)
    return CandidateGeometry(
        kind=inst.kind,
        space=space,
        regions=regions,
        interfaces=interfaces,
        periods=_periods(base),
        quotient=quotient,
        domain=_domain_path(base),
    )
