"""Inverse problems (areas -> parameters) and winner selection."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .candidates import (
    EQUAL_CHAIN_K,
    LENS_K,
    SQRT3,
    BandLensParams,
    CandidateInstance,
    ChainParamsEqual,
    ChainParamsUnequal,
    DoubleBandParams,
    HexTilingParams,
    Kind,
    SdbParams,
    band_lens_eval,
    chain_eval_equal,
    double_band_eval,
    hex_eval,
    sdb_evaluate,
)
from .errors import ConvergenceError, DomainError
from .torus import Cylinder, FlatTorus, HomologyClass, Space, Strip, chain_axes, is_hexagonal, torus_area

DEFAULT_TIE_TOL = 1e-9
DEFAULT_SWEEP = 512
EQUAL_AREA_REL = 1e-10
NEWTON_STEP = 1e-7
NEWTON_MAXITER = 200
HEX_K = SQRT3 / 4
HEX_EXIST_K = 2 / 3 ** 0.25

_LABEL_INDEX = {1: 0, 2: 1, 0: 2}


def _other_label(a: int, b: int) -> int:
    return ({0, 1, 2} - {a, b}).pop()


def _note(reasons: Optional[list], msg: str) -> None:
    if reasons is not None:
        reasons.append(msg)


# ---------------------------------------------------------------- 2-D Newton


def damped_newton(
    F: Callable[[float, float], tuple[float, float]],
    x0: tuple[float, float],
    inside: Callable[[float, float], bool],
    tol: float,
    maxiter: int = NEWTON_MAXITER,
    h: float = NEWTON_STEP,
) -> tuple[float, float]:
    """Damped Newton with a central-difference Jacobian.

    Steps are halved until the residual decreases and the iterate stays
    where ``inside`` holds.  Raises ConvergenceError on failure.
    """
    x, y = x0
    fx, fy = F(x, y)
    norm = max(abs(fx), abs(fy))
    for _ in range(maxiter):
        if norm <= tol:
            return x, y
        a1, a2 = F(x + h, y)
        b1, b2 = F(x - h, y)
        c1, c2 = F(x, y + h)
        d1, d2 = F(x, y - h)
        j11, j21 = (a1 - b1) / (2 * h), (a2 - b2) / (2 * h)
        j12, j22 = (c1 - d1) / (2 * h), (c2 - d2) / (2 * h)
        det = j11 * j22 - j12 * j21
        if det == 0 or not math.isfinite(det):
            raise ConvergenceError("singular Jacobian")
        dx = -(j22 * fx - j12 * fy) / det
        dy = -(-j21 * fx + j11 * fy) / det
        lam = 1.0
        for _ in range(60):
            nx, ny = x + lam * dx, y + lam * dy
            if inside(nx, ny):
                gx, gy = F(nx, ny)
                new = max(abs(gx), abs(gy))
                if new < norm or new <= tol:
                    break
            lam *= 0.5
        else:
            if norm <= 100 * tol:
                return x, y
            raise ConvergenceError(f"line search stalled at residual {norm:.3e}")
        x, y, fx, fy, norm = nx, ny, gx, gy, new
    if norm <= tol:
        return x, y
    raise ConvergenceError(f"no convergence after {maxiter} iterations (residual {norm:.3e})")


# ---------------------------------------------------------------- standard double bubble


def _sdb_ratio(theta: float) -> float:
    ev = sdb_evaluate(SdbParams(theta, 1.0))
    return ev.area_high / ev.area_low


_SDB_THETA_MAX = math.pi / 3 * (1 - 1e-13)


def sdb_params_for(small: float, large: float) -> SdbParams:
    """The planar standard double bubble with cap areas ``small <= large``."""
    ratio = small / large
    if ratio >= 1.0:
        theta = 0.0
    else:
        if _sdb_ratio(_SDB_THETA_MAX) > ratio:
            raise ConvergenceError(f"area ratio {ratio:.3e} below the resolvable range")
        theta = brentq(lambda t: _sdb_ratio(t) - ratio, 0.0, _SDB_THETA_MAX,
                       xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    high = sdb_evaluate(SdbParams(theta, 1.0)).area_high
    return SdbParams(theta, math.sqrt(small / high))


def sdb_solve(Ax: float, Ay: float, labels=(1, 2), areas=None, reasons=None) -> Optional[CandidateInstance]:
    if not (Ax > 0 and Ay > 0):
        raise DomainError("areas must be positive")
    (small, ls), (large, ll) = sorted([(Ax, labels[0]), (Ay, labels[1])], key=lambda z: z[0])
    p = sdb_params_for(small, large)
    ev = sdb_evaluate(p)
    if ev.diameter > 1.0:
        _note(reasons, f"SDB {labels}: diameter {ev.diameter:.6g} > 1, does not fit")
        return None
    if areas is None:
        areas = (Ax, Ay, math.inf)
    roles = (ls, ll, _other_label(ls, ll))
    return CandidateInstance(Kind.STANDARD_DOUBLE_BUBBLE, p, tuple(areas), ev.perimeter, roles)


# ---------------------------------------------------------------- band lens


def band_lens_solve(space: Space, lens_area: float, band_area: float, labels=(1, 2), areas=None,
                    reasons=None) -> Optional[CandidateInstance]:
    if not (lens_area > 0 and band_area > 0):
        raise DomainError("areas must be positive")
    r = math.sqrt(lens_area / (2 * LENS_K))
    d = band_area + r * r * LENS_K
    tag = f"band lens {labels}"
    if not r < 1 / SQRT3:
        _note(reasons, f"{tag}: lens radius {r:.6g} >= 1/sqrt(3)")
        return None
    if not d > r / 2:
        _note(reasons, f"{tag}: band width {d:.6g} <= r/2")
        return None
    if isinstance(space, FlatTorus):
        ext = torus_area(space) - lens_area - band_area
        if not ext + r * r * LENS_K > r / 2:
            _note(reasons, f"{tag}: exterior band too narrow for the lens")
            return None
    p = BandLensParams(r, d)
    per = band_lens_eval(p)[2]
    if areas is None:
        areas = (lens_area, band_area, math.inf)
    roles = (labels[0], labels[1], _other_label(*labels))
    return CandidateInstance(Kind.BAND_LENS, p, tuple(areas), per, roles)


# ---------------------------------------------------------------- standard chain


def _chain_st_to_params(s, t):
    """Unit-axis chain parameters from the unit square (s, t)."""
    c1 = 0.5 * s
    lo = np.arcsin(c1)
    return c1, lo + t * (math.pi / 6 - lo)


def _chord_area_np(theta, chord):
    s = np.sin(theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = chord * chord * (theta - s * np.cos(theta)) / (4 * s * s)
    return np.where(theta == 0, 0.0, out)


def _chain_areas_np(s, t):
    c1, t1 = _chain_st_to_params(s, t)
    c2 = 1.0 - c1
    t2 = math.pi / 3 - t1
    t3 = math.pi / 6 - t1
    with np.errstate(divide="ignore", invalid="ignore"):
        c3 = c1 * c2 * np.sin(t3) / (c2 * np.sin(t1) - c1 * np.sin(t2))
    a3 = _chord_area_np(t3, c3)
    high = 2 * _chord_area_np(t1, c1) + 2 * a3 + c1 * c3
    low = 2 * _chord_area_np(t2, c2) - 2 * a3 + c2 * c3
    # s = 1 is the equal-pressure corner; the interface chord has a limit
    corner = s >= 1.0
    if np.any(corner):
        with np.errstate(divide="ignore"):
            c3c = (1 - t) / (2 * SQRT3 * t)
        eq = EQUAL_CHAIN_K + 0.5 * c3c
        high = np.where(corner, eq, high)
        low = np.where(corner, eq, low)
    return high, low


def _chain_areas(s: float, t: float) -> tuple[float, float, float]:
    """(high area, low area, perimeter) of the unit-axis chain at (s, t)."""
    c1 = 0.5 * s
    lo = math.asin(c1)
    t1 = lo + t * (math.pi / 6 - lo)
    c2 = 1.0 - c1
    t2 = math.pi / 3 - t1
    t3 = math.pi / 6 - t1
    s1, s2, s3 = math.sin(t1), math.sin(t2), math.sin(t3)
    c3 = c1 * c2 * s3 / (c2 * s1 - c1 * s2)
    a1 = c1 * c1 * (t1 - s1 * math.cos(t1)) / (4 * s1 * s1)
    a2 = c2 * c2 * (t2 - s2 * math.cos(t2)) / (4 * s2 * s2)
    if t3 > 0:
        a3 = c3 * c3 * (t3 - s3 * math.cos(t3)) / (4 * s3 * s3)
        l3 = c3 * t3 / s3
    else:
        a3, l3 = 0.0, c3
    per = 2 * c1 * t1 / s1 + 2 * c2 * t2 / s2 + 2 * l3
    return 2 * a1 + 2 * a3 + c1 * c3, 2 * a2 - 2 * a3 + c2 * c3, per


class ChainIndex:
    """Sweep of the unit-axis unequal-pressure chain family with a triangle lookup.

    The feasible parameter set is mapped onto the unit square (s, t):
    ``C1 = s/2`` and ``theta1`` runs from the self-tangency bound ``asin(C1)``
    (t = 0) to ``pi/6`` (t = 1).  Nodes cluster toward the edges.
    """

    AREA_BOX = 4.0
    BUCKETS = 256

    def __init__(self, resolution: int = DEFAULT_SWEEP):
        n = resolution
        self.resolution = n
        g = 0.5 * (1 - np.cos(np.pi * np.arange(n + 1) / n))
        S, T = np.meshgrid(g, g, indexing="ij")
        H, L = _chain_areas_np(S, T)
        ok = np.isfinite(H) & np.isfinite(L)
        # two triangles per cell: (i,j),(i+1,j),(i+1,j+1) and (i,j),(i+1,j+1),(i,j+1)
        i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        i, j = i.ravel(), j.ravel()
        ti = np.concatenate([np.stack([i, i + 1, i + 1], axis=1), np.stack([i, i + 1, i], axis=1)])
        tj = np.concatenate([np.stack([j, j, j + 1], axis=1), np.stack([j, j + 1, j + 1], axis=1)])
        good = ok[ti, tj].all(axis=1)
        ti, tj = ti[good], tj[good]
        P = np.stack([H[ti, tj], L[ti, tj]], axis=-1)  # (m, 3, 2) image vertices
        self.st = np.stack([S[ti, tj], T[ti, tj]], axis=-1)
        self.p0 = P[:, 0, :]
        e1 = P[:, 1, :] - P[:, 0, :]
        e2 = P[:, 2, :] - P[:, 0, :]
        det = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
        keep = det != 0
        self.p0, self.st = self.p0[keep], self.st[keep]
        e1, e2, det = e1[keep], e2[keep], det[keep]
        P = P[keep]
        # inverse of [e1 e2] for barycentric coordinates
        self.inv = np.stack([
            np.stack([e2[:, 1], -e2[:, 0]], axis=-1),
            np.stack([-e1[:, 1], e1[:, 0]], axis=-1),
        ], axis=1) / det[:, None, None]
        self.lo = P.min(axis=1)
        self.hi = P.max(axis=1)
        self._build_buckets()

    def _build_buckets(self):
        nb, box = self.BUCKETS, self.AREA_BOX
        w = box / nb
        inbox = (self.lo[:, 0] <= box) & (self.lo[:, 1] <= box)
        idx = np.nonzero(inbox)[0]
        b0 = np.clip(np.floor(self.lo[idx] / w).astype(np.int64), 0, nb - 1)
        b1 = np.clip(np.floor(self.hi[idx] / w).astype(np.int64), 0, nb - 1)
        nx = b1[:, 0] - b0[:, 0] + 1
        ny = b1[:, 1] - b0[:, 1] + 1
        cnt = nx * ny
        tri = np.repeat(idx, cnt)
        start = np.repeat(np.cumsum(cnt) - cnt, cnt)
        k = np.arange(cnt.sum()) - start
        nyr = np.repeat(ny, cnt)
        bx = np.repeat(b0[:, 0], cnt) + k // nyr
        by = np.repeat(b0[:, 1], cnt) + k % nyr
        bucket = bx * nb + by
        order = np.argsort(bucket, kind="stable")
        self._bucket_tris = tri[order]
        self._offsets = np.searchsorted(bucket[order], np.arange(nb * nb + 1))

    def brackets(self, high: float, low: float) -> list[tuple[float, float]]:
        """Initial (s, t) guesses for every sweep triangle containing the target."""
        nb, box = self.BUCKETS, self.AREA_BOX
        if high < box and low < box:
            b = int(high / (box / nb)) * nb + int(low / (box / nb))
            cand = self._bucket_tris[self._offsets[b]:self._offsets[b + 1]]
        else:
            cand = np.nonzero((self.lo[:, 0] <= high) & (self.hi[:, 0] >= high)
                              & (self.lo[:, 1] <= low) & (self.hi[:, 1] >= low))[0]
        if cand.size == 0:
            return []
        d = np.array([high, low]) - self.p0[cand]
        lam = np.einsum("kij,kj->ki", self.inv[cand], d)
        l1, l2 = lam[:, 0], lam[:, 1]
        eps = -1e-9
        hit = (l1 >= eps) & (l2 >= eps) & (l1 + l2 <= 1 - eps)
        out = []
        for k, a, b in zip(cand[hit], l1[hit], l2[hit]):
            st = self.st[k]
            guess = (1 - a - b) * st[0] + a * st[1] + b * st[2]
            out.append((float(guess[0]), float(guess[1])))
        return out


@functools.lru_cache(maxsize=4)
def chain_index(resolution: int = DEFAULT_SWEEP) -> ChainIndex:
    return ChainIndex(resolution)


_ST_EPS = 1e-12


def _inside_st(s, t):
    return _ST_EPS <= s <= 1 - _ST_EPS and _ST_EPS <= t <= 1 - _ST_EPS


def _clip_st(s, t):
    return min(max(s, _ST_EPS), 1 - _ST_EPS), min(max(t, _ST_EPS), 1 - _ST_EPS)


def chain_unequal_solutions(high: float, low: float, resolution: int = DEFAULT_SWEEP,
                            reasons=None) -> list[tuple[float, float, float]]:
    """All unit-axis unequal chains with (high, low) areas: (theta1, C1, perimeter)."""
    index = chain_index(resolution)
    tol = 1e-15 + 1e-13 * max(high, low)

    def F(s, t):
        h, l, _ = _chain_areas(s, t)
        return h - high, l - low

    found: list[tuple[float, float]] = []
    for guess in index.brackets(high, low):
        try:
            s, t = damped_newton(F, _clip_st(*guess), _inside_st, tol)
        except ConvergenceError as exc:
            _note(reasons, f"chain bracket at {guess} skipped: {exc}")
            continue
        if any(abs(s - a) <= 1e-8 and abs(t - b) <= 1e-8 for a, b in found):
            continue
        found.append((s, t))
    out = []
    for s, t in found:
        c1 = 0.5 * s
        lo = math.asin(c1)
        t1 = lo + t * (math.pi / 6 - lo)
        out.append((t1, c1, _chain_areas(s, t)[2]))
    return out


def chain_solve(L0: float, Ax: float, Ay: float, labels=(1, 2), areas=None,
                direction: HomologyClass = HomologyClass(1, 0), resolution: int = DEFAULT_SWEEP,
                reasons=None) -> Optional[CandidateInstance]:
    if not (Ax > 0 and Ay > 0):
        raise DomainError("areas must be positive")
    if areas is None:
        areas = (Ax, Ay, math.inf)
    flag = L0 > 1 + 1e-12
    tag = f"chain L0={L0:.6g} {labels}"
    ext = _other_label(*labels)
    if abs(Ax - Ay) <= EQUAL_AREA_REL * max(Ax, Ay):
        area = 0.5 * (Ax + Ay)
        c3 = (area - EQUAL_CHAIN_K * L0 * L0) / (0.5 * L0)
        if c3 < 0:
            _note(reasons, f"{tag}: equal areas below the pinched equal-pressure chain")
            return None
        p = ChainParamsEqual(L0, c3, direction)
        per = chain_eval_equal(p)[2]
        return CandidateInstance(Kind.STANDARD_CHAIN, p, tuple(areas), per,
                                 (labels[0], labels[1], ext), flag)
    best = None
    scale = L0 * L0
    for (hi_a, hi_l), (lo_a, lo_l) in (((Ax, labels[0]), (Ay, labels[1])),
                                       ((Ay, labels[1]), (Ax, labels[0]))):
        for t1, c1, per in chain_unequal_solutions(hi_a / scale, lo_a / scale, resolution, reasons):
            per *= L0
            if best is None or per < best[0]:
                best = (per, t1, c1 * L0, hi_l, lo_l)
    if best is None:
        _note(reasons, f"{tag}: target outside the swept chain family")
        return None
    per, t1, c1, hi_l, lo_l = best
    p = ChainParamsUnequal(L0, t1, c1, direction)
    return CandidateInstance(Kind.STANDARD_CHAIN, p, tuple(areas), per, (hi_l, lo_l, ext), flag)


# ---------------------------------------------------------------- hexagon tiling


def hex_exists(A1: float, A2: float, A0: float) -> bool:
    r = [math.sqrt(a) for a in (A1, A2, A0)]
    return all(HEX_EXIST_K * (r[j] + r[k]) > 1 for j, k in ((0, 1), (0, 2), (1, 2)))


def _hex_residual(A1, A2):
    def F(a, b):
        c = 1 - a - b
        return (HEX_K * (a * a + 4 * a * b + b * b) - A1,
                HEX_K * (b * b + 4 * b * c + c * c) - A2)
    return F


def _hex_inside(a, b):
    return a >= 0 and b >= 0 and a + b <= 1


def _hex_grid_start(A1, A2, n=24):
    F = _hex_residual(A1, A2)
    best = None
    for i in range(1, n):
        for j in range(1, n - i):
            a, b = i / n, j / n
            r = max(abs(x) for x in F(a, b))
            if best is None or r < best[0]:
                best = (r, a, b)
    return best[1], best[2]


def hex_newton(A1: float, A2: float, start=(1 / 3, 1 / 3)) -> HexTilingParams:
    a, b = damped_newton(_hex_residual(A1, A2), start, _hex_inside, 1e-15)
    return HexTilingParams(a, b, 1.0 - a - b)


def hex_solve(t: FlatTorus, A1: float, A2: float, A0: float, labels=(1, 2, 0), reasons=None
              ) -> Optional[CandidateInstance]:
    if not (A1 > 0 and A2 > 0 and A0 > 0):
        raise DomainError("areas must be positive")
    if not is_hexagonal(t):
        _note(reasons, "hexagon tiling: torus is not hexagonal")
        return None
    if abs(A1 + A2 + A0 - torus_area(t)) > 1e-9:
        raise DomainError("the three areas must fill the torus")
    if not hex_exists(A1, A2, A0):
        _note(reasons, "hexagon tiling: areas outside the existence region")
        return None
    try:
        p = hex_newton(A1, A2)
    except ConvergenceError:
        p = hex_newton(A1, A2, _hex_grid_start(A1, A2))
    if min(p.a, p.b, p.c) <= 0:
        raise ConvergenceError(f"hexagon side lengths not positive: {p}")
    areas = [0.0, 0.0, 0.0]
    for lab, val in zip(labels, (A1, A2, A0)):
        areas[_LABEL_INDEX[lab]] = val
    return CandidateInstance(Kind.HEXAGON_TILING, p, tuple(areas), 3.0, tuple(labels))


# ---------------------------------------------------------------- winner selection


@dataclass
class SolveReport:
    space: Space
    requested: tuple[float, float, float]
    feasible: list[CandidateInstance]
    winners: list[CandidateInstance]
    min_perimeter: float
    diagnostics: list[str] = field(default_factory=list)

    @property
    def winner_kinds(self) -> tuple[str, ...]:
        return tuple(sorted({str(w.kind) for w in self.winners}))

    @property
    def flagged(self) -> list[CandidateInstance]:
        return [w for w in self.winners if w.axis_flag]

    def best_by_kind(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for inst in self.feasible:
            out.setdefault(str(inst.kind), inst.perimeter)
        return out


def _check_areas(space: Space, A1: float, A2: float) -> float:
    if not (A1 > 0 and A2 > 0) or not (math.isfinite(A1) and math.isfinite(A2)):
        raise DomainError(f"areas must be positive and finite, got {A1!r}, {A2!r}")
    if isinstance(space, FlatTorus):
        A0 = torus_area(space) - A1 - A2
        if not A0 > 0:
            raise DomainError(f"A1 + A2 = {A1 + A2!r} must be less than the torus area {torus_area(space)!r}")
        return A0
    return math.inf


def best_double_bubble(space: Space, A1: float, A2: float, tie_tol: float = DEFAULT_TIE_TOL,
                       sweep_resolution: int = DEFAULT_SWEEP) -> SolveReport:
    if isinstance(space, Strip):
        return solve_strip(A1, A2, tie_tol, sweep_resolution)
    A0 = _check_areas(space, A1, A2)
    areas = (A1, A2, A0)
    by_label = {1: A1, 2: A2, 0: A0}
    torus = isinstance(space, FlatTorus)
    labels = (1, 2, 0) if torus else (1, 2)
    pairs = [(a, b) for i, a in enumerate(labels) for b in labels[i + 1:]]
    reasons: list[str] = []
    found: list[CandidateInstance] = []

    def add(inst):
        if inst is not None:
            found.append(inst)

    for a, b in pairs:
        add(sdb_solve(by_label[a], by_label[b], (a, b), areas, reasons))
    for lens in labels:
        for band in labels:
            if band != lens:
                add(band_lens_solve(space, by_label[lens], by_label[band], (lens, band), areas, reasons))
    axes = chain_axes(space) if torus else [(1.0, HomologyClass(1, 0))]
    for L0, h in axes:
        if 2 * L0 > 3 + 1e-12:
            reasons.append(f"chain L0={L0:.6g}: perimeter >= 2*L0 > 3, never minimizing")
            continue
        for a, b in pairs:
            add(chain_solve(L0, by_label[a], by_label[b], (a, b), areas, h, sweep_resolution, reasons))
    double_band_eval(A1, A2, torus_area(space) if torus else math.inf)
    found.append(CandidateInstance(Kind.DOUBLE_BAND, DoubleBandParams(A1, A2), areas, 3.0, (1, 2, 0)))
    if torus:
        add(hex_solve(space, A1, A2, A0, (1, 2, 0), reasons))
    found.sort(key=CandidateInstance.sort_key)
    pmin = found[0].perimeter
    winners = [c for c in found if c.perimeter <= pmin + tie_tol]
    for w in winners:
        if w.axis_flag:
            reasons.append(f"winning chain has axis length {w.params.axis_length:.6g} > 1 (validity caveat)")
    return SolveReport(space, areas, found, winners, pmin, reasons)


def solve_strip(A1: float, A2: float, tie_tol: float = DEFAULT_TIE_TOL,
                sweep_resolution: int = DEFAULT_SWEEP) -> SolveReport:
    """Strip minimizers as halves of cylinder minimizers with doubled areas."""
    _check_areas(Strip(), A1, A2)
    cyl = best_double_bubble(Cylinder(), 2 * A1, 2 * A2, tie_tol, sweep_resolution)
    areas = (A1, A2, math.inf)

    def half(c: CandidateInstance) -> CandidateInstance:
        return CandidateInstance(c.kind, c.params, areas, c.perimeter / 2, c.roles, c.axis_flag)

    feasible = [half(c) for c in cyl.feasible]
    winners = [half(c) for c in cyl.winners]
    return SolveReport(Strip(), areas, feasible, winners, cyl.min_perimeter / 2, cyl.diagnostics)
