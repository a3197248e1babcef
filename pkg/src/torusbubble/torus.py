"""Flat tori normalized so the shortest closed geodesic has length one.

The fundamental domain is the parallelogram spanned by ``u = (1, 0)`` and
``v = L (cos t, sin t)`` with ``L >= 1`` and ``t`` in ``[pi/3, pi/2]``.  The
infinite cylinder has circumference one (closed geodesics horizontal, the
axis vertical); the free-boundary strip is its quotient of width one half.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError

ANGLE_TOL = 1e-12
UNIT_TOL = 1e-12
SQRT3 = math.sqrt(3.0)
HEX_AREA = SQRT3 / 2.0


@dataclass(frozen=True)
class FlatTorus:
    side_l: float = 1.0
    angle: float = math.pi / 2

    def __post_init__(self):
        if not self.side_l >= 1.0 - UNIT_TOL:
            raise DomainError(f"side length L={self.side_l!r} must be >= 1")
        if not (math.pi / 3 - ANGLE_TOL <= self.angle <= math.pi / 2 + ANGLE_TOL):
            raise DomainError(f"angle {self.angle!r} outside [pi/3, pi/2]")

    @classmethod
    def hexagonal(cls) -> "FlatTorus":
        return cls(1.0, math.pi / 3)

    @classmethod
    def from_degrees(cls, side_l: float, degrees: float) -> "FlatTorus":
        return cls(side_l, math.radians(degrees))

    @property
    def u(self) -> tuple[float, float]:
        return (1.0, 0.0)

    @property
    def v(self) -> tuple[float, float]:
        return (self.side_l * math.cos(self.angle), self.side_l * math.sin(self.angle))

    @property
    def area(self) -> float:
        return torus_area(self)

    @property
    def height(self) -> float:
        """Distance between the two horizontal sides of the domain."""
        return self.side_l * math.sin(self.angle)

    def lattice_vector(self, p: int, q: int) -> tuple[float, float]:
        vx, vy = self.v
        return (p + q * vx, q * vy)

    def __str__(self):
        return f"torus(L={self.side_l:g}, angle={math.degrees(self.angle):g}deg)"


@dataclass(frozen=True)
class Cylinder:
    """Flat infinite cylinder of circumference one."""

    area = math.inf

    def __str__(self):
        return "cylinder"


@dataclass(frozen=True)
class Strip:
    """Flat infinite strip of width one half with free boundary."""

    area = math.inf

    def __str__(self):
        return "strip"


Space = Union[FlatTorus, Cylinder, Strip]


def space_area(space: Space) -> float:
    return torus_area(space) if isinstance(space, FlatTorus) else math.inf


@dataclass(frozen=True, order=True)
class HomologyClass:
    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 and self.q == 0:
            raise DomainError("(0, 0) is not a homology class of a closed geodesic")
        if self.p < 0 or (self.p == 0 and self.q < 0):
            object.__setattr__(self, "p", -self.p)
            object.__setattr__(self, "q", -self.q)

    def __str__(self):
        return f"({self.p},{self.q})"


def torus_area(t: FlatTorus) -> float:
    return t.side_l * math.sin(t.angle)


def geodesic_length(t: FlatTorus, h: HomologyClass) -> float:
    p, q, L = h.p, h.q, t.side_l
    return math.sqrt(max(p * p + q * q * L * L + 2 * p * q * L * math.cos(t.angle), 0.0))


_SMALL_CLASSES = (HomologyClass(1, 0), HomologyClass(0, 1), HomologyClass(1, 1), HomologyClass(1, -1))


def short_directions(t: FlatTorus) -> list[HomologyClass]:
    return [h for h in _SMALL_CLASSES if abs(geodesic_length(t, h) - 1.0) <= UNIT_TOL]


def chain_axes(t: FlatTorus) -> list[tuple[float, HomologyClass]]:
    """(length, class) for the chain axes that can wrap once, one class per length."""
    lengths = []
    for i, h in enumerate(_SMALL_CLASSES):
        length = geodesic_length(t, h)
        if abs(length - 1.0) <= UNIT_TOL:
            length = 1.0
        lengths.append((length, i, h))
    out: list[tuple[float, HomologyClass]] = []
    for length, _, h in sorted(lengths):
        if out and abs(out[-1][0] - length) <= UNIT_TOL:
            continue
        out.append((length, h))
    return out


def chain_axis_lengths(t: FlatTorus) -> list[float]:
    return [length for length, _ in chain_axes(t)]


def is_hexagonal(t: FlatTorus) -> bool:
    return abs(t.side_l - 1.0) <= 1e-12 and abs(t.angle - math.pi / 3) <= 1e-12
