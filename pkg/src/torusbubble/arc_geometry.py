"""Circular arcs subtended by chords, and closed paths made of them.

An arc is described by its chord (start and end point) and the signed angle
``bulge`` between the chord and the arc at either endpoint.  Positive bulge
bows to the left of the start->end direction, negative to the right, zero is
a straight segment.  With this convention a counterclockwise circle built
from arcs has every bulge negative and curvature ``+1/r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError

Point = tuple[float, float]

CLOSURE_TOL = 1e-12


def _check_params(theta: float, chord: float) -> None:
    if not (0.0 <= theta < math.pi):
        raise DomainError(f"arc angle {theta!r} outside [0, pi)")
    if not chord > 0.0:
        raise DomainError(f"chord length {chord!r} must be positive")


def chord_area(theta: float, chord: float) -> float:
    """Area between an arc and its chord, ``C^2 (t - sin t cos t) / (4 sin^2 t)``."""
    _check_params(theta, chord)
    if theta < 1e-2:
        # series; the direct form cancels catastrophically near 0
        t2 = theta * theta
        return chord * chord * theta / 6.0 * (1.0 + t2 * (2.0 / 15.0 + t2 * 2.0 / 105.0))
    s = math.sin(theta)
    return chord * chord * (theta - s * math.cos(theta)) / (4.0 * s * s)


def arc_length(theta: float, chord: float) -> float:
    _check_params(theta, chord)
    if theta == 0.0:
        return chord
    return chord * theta / math.sin(theta)


def arc_radius(theta: float, chord: float) -> float:
    _check_params(theta, chord)
    if theta == 0.0:
        raise DomainError("a straight segment has no finite radius")
    return chord / (2.0 * math.sin(theta))


@dataclass(frozen=True)
class ArcChordParams:
    theta: float
    C: float

    def __post_init__(self):
        _check_params(self.theta, self.C)

    @property
    def area(self) -> float:
        return chord_area(self.theta, self.C)

    @property
    def length(self) -> float:
        return arc_length(self.theta, self.C)

    @property
    def radius(self) -> float:
        return arc_radius(self.theta, self.C)


def _rotate(v: Point, angle: float) -> Point:
    c, s = math.cos(angle), math.sin(angle)
    return (c * v[0] - s * v[1], s * v[0] + c * v[1])


@dataclass(frozen=True)
class ArcEdge:
    start: Point
    end: Point
    bulge: float = 0.0

    def __post_init__(self):
        if not abs(self.bulge) < math.pi:
            raise DomainError(f"|bulge| must be < pi, got {self.bulge!r}")
        if self.chord == 0.0:
            raise DomainError("degenerate edge: start == end")

    @property
    def chord(self) -> float:
        return math.hypot(self.end[0] - self.start[0], self.end[1] - self.start[1])

    @property
    def direction(self) -> Point:
        c = self.chord
        return ((self.end[0] - self.start[0]) / c, (self.end[1] - self.start[1]) / c)

    @property
    def length(self) -> float:
        return arc_length(abs(self.bulge), self.chord)

    @property
    def radius(self) -> float:
        return arc_radius(abs(self.bulge), self.chord)

    @property
    def curvature(self) -> float:
        """Signed curvature, positive when the edge turns left."""
        return -2.0 * math.sin(self.bulge) / self.chord

    @property
    def center(self) -> Point:
        if self.bulge == 0.0:
            raise DomainError("a straight segment has no center")
        ux, uy = self.direction
        k = 0.5 * self.chord / math.tan(self.bulge)
        mx = 0.5 * (self.start[0] + self.end[0])
        my = 0.5 * (self.start[1] + self.end[1])
        # center sits opposite the bulge along the left normal (-uy, ux)
        return (mx + k * uy, my - k * ux)

    @property
    def segment_area(self) -> float:
        """Signed area correction relative to the chord for a CCW boundary."""
        a = chord_area(abs(self.bulge), self.chord)
        return -a if self.bulge > 0 else a

    def start_tangent(self) -> Point:
        return _rotate(self.direction, self.bulge)

    def end_tangent(self) -> Point:
        return _rotate(self.direction, -self.bulge)

    def point_at(self, t: float) -> Point:
        if self.bulge == 0.0:
            return (
                self.start[0] + t * (self.end[0] - self.start[0]),
                self.start[1] + t * (self.end[1] - self.start[1]),
            )
        # chord from the start: length C sin(bt)/sin(b), at angle b(1-t) to the chord
        b = self.bulge
        rho = self.chord * math.sin(b * t) / math.sin(b)
        dx, dy = _rotate(self.direction, b * (1.0 - t))
        return (self.start[0] + rho * dx, self.start[1] + rho * dy)

    def reversed(self) -> "ArcEdge":
        return ArcEdge(self.end, self.start, -self.bulge)

    def translated(self, dx: float, dy: float) -> "ArcEdge":
        return ArcEdge(
            (self.start[0] + dx, self.start[1] + dy),
            (self.end[0] + dx, self.end[1] + dy),
            self.bulge,
        )

    def split(self, pieces: int) -> list["ArcEdge"]:
        """Cut into ``pieces`` consecutive arcs on the same circle."""
        pts = [self.start] + [self.point_at(i / pieces) for i in range(1, pieces)] + [self.end]
        b = self.bulge / pieces
        return [ArcEdge(pts[i], pts[i + 1], b) for i in range(pieces)]


@dataclass(frozen=True)
class ArcPath:
    edges: tuple[ArcEdge, ...]
    closed: bool = True

    def __init__(self, edges: Iterable[ArcEdge], closed: bool = True):
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "closed", closed)
        if not self.edges:
            raise DomainError("empty path")
        n = len(self.edges)
        last = n if closed else n - 1
        for i in range(last):
            a, b = self.edges[i].end, self.edges[(i + 1) % n].start
            if abs(a[0] - b[0]) > CLOSURE_TOL or abs(a[1] - b[1]) > CLOSURE_TOL:
                raise DomainError(f"path is not continuous at edge {i}: {a} != {b}")

    @property
    def length(self) -> float:
        return sum(e.length for e in self.edges)

    def reversed(self) -> "ArcPath":
        return ArcPath([e.reversed() for e in reversed(self.edges)], self.closed)

    def translated(self, dx: float, dy: float) -> "ArcPath":
        return ArcPath([e.translated(dx, dy) for e in self.edges], self.closed)


def polygon_path(points: Sequence[Point], bulges: Sequence[float] | None = None) -> ArcPath:
    """Closed path through ``points`` with optional per-edge bulges."""
    n = len(points)
    if bulges is None:
        bulges = [0.0] * n
    return ArcPath(ArcEdge(points[i], points[(i + 1) % n], bulges[i]) for i in range(n))


def path_area(path: ArcPath) -> float:
    """Signed area enclosed by a closed path (positive when counterclockwise)."""
    if not path.closed:
        raise DomainError("area of an open path is undefined")
    twice = 0.0
    corr = 0.0
    for e in path.edges:
        twice += e.start[0] * e.end[1] - e.end[0] * e.start[1]
        if e.bulge != 0.0:
            corr += e.segment_area
    return 0.5 * twice + corr
