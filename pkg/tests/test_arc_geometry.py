import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusbubble.arc_geometry import (
    ArcChordParams,
    ArcEdge,
    ArcPath,
    arc_length,
    arc_radius,
    chord_area,
    path_area,
    polygon_path,
)
from torusbubble.errors import DomainError
from torusbubble.oracle import quadrature_area


def test_chord_area_reference_values():
    # 30-digit mpmath evaluation; also the circular-segment formula R^2 (2t - sin 2t)/2
    assert chord_area(2 * math.pi / 3, 1.0) == pytest.approx(0.842469268095138, rel=1e-14)
    assert chord_area(math.pi / 2, 2.0) == pytest.approx(math.pi / 2, rel=1e-14)  # half disk of radius 1
    assert chord_area(0.0, 1.0) == 0.0


def test_arc_length_and_radius():
    assert arc_length(math.pi / 3, math.sqrt(3) * 0.25) == pytest.approx(0.5235988, abs=1e-7)
    assert arc_length(0.0, 0.7) == 0.7
    assert arc_radius(math.pi / 2, 2.0) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        arc_radius(0.0, 1.0)


@pytest.mark.parametrize("theta,chord", [(-0.1, 1.0), (math.pi, 1.0), (0.5, 0.0), (0.5, -1.0)])
def test_arc_domain_errors(theta, chord):
    with pytest.raises(DomainError):
        chord_area(theta, chord)
    with pytest.raises(DomainError):
        ArcChordParams(theta, chord)


def test_arc_chord_params_properties():
    p = ArcChordParams(math.pi / 2, 2.0)
    assert p.radius == pytest.approx(1.0)
    assert p.length == pytest.approx(math.pi)
    assert p.area == pytest.approx(math.pi / 2)


def test_edge_curvature_and_center():
    # left-bulging half circle from (1,0) to (-1,0) through (0,1): a CCW turn
    e = ArcEdge((1.0, 0.0), (-1.0, 0.0), -math.pi / 2)
    assert e.curvature == pytest.approx(1.0)
    cx, cy = e.center
    assert (cx, cy) == pytest.approx((0.0, 0.0), abs=1e-15)
    mid = e.point_at(0.5)
    assert mid == pytest.approx((0.0, 1.0), abs=1e-15)
    assert e.reversed().curvature == pytest.approx(-1.0)


def test_edge_validation():
    with pytest.raises(DomainError):
        ArcEdge((0.0, 0.0), (0.0, 0.0))
    with pytest.raises(DomainError):
        ArcEdge((0.0, 0.0), (1.0, 0.0), math.pi)


def test_unit_square_and_circle():
    sq = polygon_path([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert path_area(sq) == 1.0
    assert sq.length == 4.0
    pts = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    circle = polygon_path(pts, [-math.pi / 4] * 4)
    assert path_area(circle) == pytest.approx(math.pi, rel=1e-14)
    assert circle.length == pytest.approx(2 * math.pi, rel=1e-14)
    assert path_area(circle.reversed()) == pytest.approx(-math.pi, rel=1e-14)


def test_open_path_has_no_area():
    p = ArcPath([ArcEdge((0, 0), (1, 0))], closed=False)
    with pytest.raises(DomainError):
        path_area(p)


def test_discontinuous_path_rejected():
    with pytest.raises(DomainError):
        ArcPath([ArcEdge((0, 0), (1, 0)), ArcEdge((1, 1e-6), (0, 0))])


def test_split_preserves_area_and_length():
    e = ArcEdge((0.0, 0.0), (1.0, 0.2), 1.1)
    parts = e.split(5)
    assert sum(p.length for p in parts) == pytest.approx(e.length, rel=1e-13)
    closing = ArcEdge((1.0, 0.2), (0.0, 0.0))
    whole = path_area(ArcPath([e, closing]))
    cut = path_area(ArcPath(parts + [closing]))
    assert cut == pytest.approx(whole, rel=1e-12)


@st.composite
def arc_polygons(draw):
    n = draw(st.integers(3, 7))
    r = [draw(st.floats(0.5, 1.5)) for _ in range(n)]
    pts = [(r[k] * math.cos(2 * math.pi * k / n), r[k] * math.sin(2 * math.pi * k / n)) for k in range(n)]
    bulges = [draw(st.floats(-0.4, 0.4)) for _ in range(n)]
    return polygon_path(pts, bulges)


@settings(max_examples=60, deadline=None)
@given(arc_polygons())
def test_path_area_matches_quadrature(path):
    assert path_area(path) == pytest.approx(quadrature_area(path, 4000), rel=1e-6, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(arc_polygons(), st.floats(-3, 3), st.floats(-3, 3))
def test_area_translation_invariant_and_reversal(path, dx, dy):
    a = path_area(path)
    assert path_area(path.translated(dx, dy)) == pytest.approx(a, rel=1e-9, abs=1e-12)
    assert path_area(path.reversed()) == pytest.approx(-a, rel=1e-12, abs=1e-15)


@settings(max_examples=80, deadline=None)
@given(st.floats(1e-3, math.pi - 1e-3), st.floats(0.01, 5.0))
def test_chord_area_scales_quadratically(theta, chord):
    assert chord_area(theta, 2 * chord) == pytest.approx(4 * chord_area(theta, chord), rel=1e-12)
