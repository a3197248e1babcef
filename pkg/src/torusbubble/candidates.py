"""Forward maps of the five candidate families: parameters -> areas, perimeter.

Region roles per family, in the order used by ``CandidateInstance.roles``:

* standard double bubble: (higher-pressure cap, lower-pressure cap, exterior)
* standard chain:         (higher-pressure component, lower, exterior)
* band lens:              (lens, band, exterior)
* double band:            (first band, second band, exterior)
* hexagon tiling:         (a|b hexagon, b|c hexagon, c|a hexagon)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Union

from .arc_geometry import arc_length, chord_area
from .errors import DomainError
from .torus import HomologyClass

SQRT3 = math.sqrt(3.0)
LENS_K = math.pi / 3 - SQRT3 / 4  # half-lens area per r^2
EQUAL_CHAIN_K = (2 * math.pi - 3 * SQRT3) / 24  # equal-chain area at C3=0 per L0^2
HEX_EPS = 1e-12


class Kind(str, enum.Enum):
    STANDARD_DOUBLE_BUBBLE = "StandardDoubleBubble"
    STANDARD_CHAIN = "StandardChain"
    BAND_LENS = "BandLens"
    DOUBLE_BAND = "DoubleBand"
    HEXAGON_TILING = "HexagonTiling"

    def __str__(self):
        return self.value


KIND_ORDER = {k: i for i, k in enumerate(Kind)}


# ---------------------------------------------------------------- parameters


@dataclass(frozen=True)
class SdbParams:
    """Angle between interior arc and separating chord, and the chord length."""

    theta: float
    C: float

    def __post_init__(self):
        if not (0.0 <= self.theta < math.pi / 3):
            raise DomainError(f"theta={self.theta!r} outside [0, pi/3)")
        if not self.C > 0:
            raise DomainError(f"C={self.C!r} must be positive")


class SdbEvaluation(NamedTuple):
    area_high: float
    area_low: float
    perimeter: float
    diameter: float


@dataclass(frozen=True)
class ChainParamsUnequal:
    axis_length: float
    theta1: float
    c1: float
    direction: HomologyClass = field(default=HomologyClass(1, 0))

    def __post_init__(self):
        L0 = self.axis_length
        if not (0.0 < self.c1 < L0 / 2):
            raise DomainError(f"C1={self.c1!r} outside (0, L0/2)")
        lo = math.asin(self.c1 / L0)
        if not (lo < self.theta1 < math.pi / 6):
            raise DomainError(f"theta1={self.theta1!r} outside (asin(C1/L0)={lo!r}, pi/6)")


@dataclass(frozen=True)
class ChainParamsEqual:
    axis_length: float
    c3: float
    direction: HomologyClass = field(default=HomologyClass(1, 0))

    def __post_init__(self):
        if not self.axis_length > 0:
            raise DomainError("axis length must be positive")
        if not self.c3 >= 0:
            raise DomainError(f"C3={self.c3!r} must be nonnegative")


class ChainEvaluation(NamedTuple):
    area_high: float
    area_low: float
    perimeter: float
    c2: float
    c3: float


@dataclass(frozen=True)
class BandLensParams:
    """Lens radius of curvature ``r`` and band width ``d``."""

    r: float
    d: float

    def __post_init__(self):
        if not (0.0 < self.r < 1.0 / SQRT3):
            raise DomainError(f"r={self.r!r} outside (0, 1/sqrt(3))")
        if not self.d > self.r / 2:
            raise DomainError(f"band width d={self.d!r} must exceed r/2={self.r / 2!r}")


@dataclass(frozen=True)
class DoubleBandParams:
    """Widths of the two bands (equal to their areas, geodesics have length one)."""

    w1: float
    w2: float


@dataclass(frozen=True)
class HexTilingParams:
    """Side lengths; region i alternates between two of them."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise DomainError("hexagon side lengths must be nonnegative")
        if abs(self.a + self.b + self.c - 1.0) > HEX_EPS:
            raise DomainError(f"a+b+c={self.a + self.b + self.c!r} must equal 1")

    @property
    def degenerate(self) -> bool:
        return min(self.a, self.b, self.c) == 0.0


Params = Union[SdbParams, ChainParamsUnequal, ChainParamsEqual, BandLensParams,
               DoubleBandParams, HexTilingParams]


# ---------------------------------------------------------------- forward maps


def sdb_diameter(theta: float, C: float) -> float:
    return C * (
        (1 + math.cos(math.pi / 3 - theta)) / (2 * math.sin(2 * math.pi / 3 + theta))
        + (1 + math.cos(math.pi / 3 + theta)) / (2 * math.sin(2 * math.pi / 3 - theta))
    )


def sdb_evaluate(p: SdbParams) -> SdbEvaluation:
    th, C = p.theta, p.C
    a_int = chord_area(th, C)
    high = chord_area(2 * math.pi / 3 - th, C) + a_int
    low = chord_area(2 * math.pi / 3 + th, C) - a_int
    per = arc_length(2 * math.pi / 3 + th, C) + arc_length(2 * math.pi / 3 - th, C) + arc_length(th, C)
    return SdbEvaluation(high, low, per, sdb_diameter(th, C))


def perimeter_over_diameter(theta: float) -> float:
    """Closed form of P/D for the standard double bubble, theta in (0, pi/3)."""
    s, c = math.sin(theta), math.cos(theta)
    return (8 * math.pi * s * c + 3 * SQRT3 * theta) / (6 * s * c + 3 * s)


def chain_c3(L0: float, theta1: float, c1: float) -> float:
    c2 = L0 - c1
    den = c2 * math.sin(theta1) - c1 * math.sin(math.pi / 3 - theta1)
    if not den > 0:
        raise DomainError("interface curvature would be non-positive (theta1 too small)")
    return c1 * c2 * math.sin(math.pi / 6 - theta1) / den


def chain_eval_unequal(p: ChainParamsUnequal) -> ChainEvaluation:
    L0, t1, c1 = p.axis_length, p.theta1, p.c1
    c2 = L0 - c1
    t2 = math.pi / 3 - t1
    t3 = math.pi / 6 - t1
    c3 = chain_c3(L0, t1, c1)
    if c3 > 0:
        a3, l3 = chord_area(t3, c3), arc_length(t3, c3)
    else:
        a3 = l3 = 0.0
    high = 2 * chord_area(t1, c1) + 2 * a3 + c1 * c3
    low = 2 * chord_area(t2, c2) - 2 * a3 + c2 * c3
    per = 2 * arc_length(t1, c1) + 2 * arc_length(t2, c2) + 2 * l3
    return ChainEvaluation(high, low, per, c2, c3)


def chain_eval_equal(p: ChainParamsEqual) -> tuple[float, float, float]:
    L0 = p.axis_length
    area = EQUAL_CHAIN_K * L0 * L0 + 0.5 * L0 * p.c3
    return area, area, 2 * math.pi / 3 * L0 + 2 * p.c3


def lens_area(r: float) -> float:
    return 2 * r * r * LENS_K


def band_lens_eval(p: BandLensParams) -> tuple[float, float, float]:
    a_lens = lens_area(p.r)
    a_band = p.d - 0.5 * a_lens
    return a_lens, a_band, (4 * math.pi / 3 - SQRT3) * p.r + 2


def double_band_eval(A1: float, A2: float, space_area: float = math.inf) -> float:
    if not (A1 > 0 and A2 > 0):
        raise DomainError("areas must be positive")
    if not A1 + A2 < space_area:
        raise DomainError("areas must sum to less than the space area")
    return 3.0


def hex_eval(p: HexTilingParams) -> tuple[float, float, float, float]:
    a, b, c = p.a, p.b, p.c
    k = SQRT3 / 4
    return (k * (a * a + 4 * a * b + b * b),
            k * (b * b + 4 * b * c + c * c),
            k * (c * c + 4 * c * a + a * a),
            3.0)


# ---------------------------------------------------------------- instances


@dataclass(frozen=True)
class CandidateInstance:
    """One concrete double bubble.

    ``areas`` is the user's triple (A1, A2, A0); ``roles`` names which user
    region (1, 2 or 0) fills each family role, see the module docstring.
    """

    kind: Kind
    params: Params
    areas: tuple[float, float, float]
    perimeter: float
    roles: tuple[int, int, int] = (1, 2, 0)
    axis_flag: bool = False

    def sort_key(self):
        return (self.perimeter, KIND_ORDER[self.kind], self.roles, _params_key(self.params))

    def role_area(self, role: int) -> float:
        user = self.roles[role]
        return self.areas[{1: 0, 2: 1, 0: 2}[user]]


def _params_key(p: Params) -> tuple:
    out = []
    for v in vars(p).values():
        out.append((v.p, v.q) if isinstance(v, HomologyClass) else v)
    return tuple(out)


def forward(kind: Kind, params: Params) -> tuple[float, ...]:
    """Role areas followed by perimeter, evaluated from the parameters alone."""
    if kind is Kind.STANDARD_DOUBLE_BUBBLE:
        ev = sdb_evaluate(params)
        return ev.area_high, ev.area_low, ev.perimeter
    if kind is Kind.STANDARD_CHAIN:
        if isinstance(params, ChainParamsEqual):
            return chain_eval_equal(params)
        ev = chain_eval_unequal(params)
        return ev.area_high, ev.area_low, ev.perimeter
    if kind is Kind.BAND_LENS:
        return band_lens_eval(params)
    if kind is Kind.DOUBLE_BAND:
        return params.w1, params.w2, 3.0
    if kind is Kind.HEXAGON_TILING:
        return hex_eval(params)
    raise ValueError(kind)
