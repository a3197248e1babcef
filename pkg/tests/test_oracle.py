import math
import random

import pytest

from torusbubble.arc_geometry import ArcEdge, ArcPath, polygon_path
from torusbubble.candidates import (
    BandLensParams,
    CandidateInstance,
    ChainParamsUnequal,
    DoubleBandParams,
    HexTilingParams,
    Kind,
    SdbParams,
    forward,
)
from torusbubble.errors import DomainError
from torusbubble.geometry import candidate_geometry
from torusbubble.oracle import (
    certify,
    check_regularity,
    g_function,
    geometry_quadrature,
    octagon_square_quotient,
    perturb_vertex,
    quadrature_area,
    quadrature_length,
    random_instance,
    verify_inequalities,
)
from torusbubble.torus import Cylinder, FlatTorus


def _inst(kind, params, space_area=1.0):
    vals = forward(kind, params)
    a1, a2 = vals[0], vals[1]
    return CandidateInstance(kind, params, (a1, a2, space_area - a1 - a2), vals[-1])


def test_quadrature_unit_square():
    sq = polygon_path([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert quadrature_area(sq, 16) == pytest.approx(1.0, abs=1e-15)
    assert quadrature_length(sq, 16) == pytest.approx(4.0, abs=1e-15)


def test_quadrature_lens():
    r = 0.2
    k = math.sqrt(3) * r
    lens = ArcPath([ArcEdge((0, 0), (k, 0), -math.pi / 3), ArcEdge((k, 0), (0, 0), -math.pi / 3)])
    # disk-intersection area 2 r^2 acos(1/2) - (r/2) sqrt(3 r^2)
    assert quadrature_area(lens, 100_000) == pytest.approx(0.0491347879443503, abs=1e-9)


def test_quadrature_sdb_symmetric():
    inst = _inst(Kind.STANDARD_DOUBLE_BUBBLE, SdbParams(0.0, 1.0), math.inf)
    g = candidate_geometry(inst, Cylinder())
    for label in (1, 2):
        a = sum(quadrature_area(p, 100_000) for p in g.regions[label])
        assert a == pytest.approx(0.842469268095138, abs=1e-9)


def test_quadrature_circle_length():
    circle = polygon_path([(1, 0), (0, 1), (-1, 0), (0, -1)], [-math.pi / 4] * 4)
    assert quadrature_length(circle, 100_000) == pytest.approx(2 * math.pi, abs=1e-8)


def test_quadrature_hex_boundary_is_three():
    inst = _inst(Kind.HEXAGON_TILING, HexTilingParams(1 / 3, 1 / 3, 1 / 3), math.sqrt(3) / 2)
    _, length = geometry_quadrature(candidate_geometry(inst, FlatTorus.hexagonal()), 100_000)
    assert length == pytest.approx(3.0, abs=1e-8)


def test_quadrature_converges_quadratically():
    lens = ArcPath([ArcEdge((0, 0), (1, 0), -1.0), ArcEdge((1, 0), (0, 0), -1.0)])
    from torusbubble.arc_geometry import path_area

    exact = path_area(lens)
    e1 = abs(quadrature_area(lens, 100) - exact)
    e2 = abs(quadrature_area(lens, 200) - exact)
    assert e1 / e2 == pytest.approx(4.0, rel=0.01)


def test_quadrature_preconditions():
    sq = polygon_path([(0, 0), (1, 0), (1, 1), (0, 1)])
    with pytest.raises(DomainError):
        quadrature_area(sq, 8)
    with pytest.raises(DomainError):
        quadrature_area(ArcPath([ArcEdge((0, 0), (1, 0))], closed=False), 100)


def test_regularity_double_band_has_no_triple_points():
    inst = _inst(Kind.DOUBLE_BAND, DoubleBandParams(0.2, 0.3))
    rep = check_regularity(candidate_geometry(inst, FlatTorus()))
    assert rep.max_angle_error == rep.cocycle_residual == rep.curvature_consistency == 0.0
    assert all(d == 2 for d in rep.degrees)


def test_regularity_random_chain():
    rng = random.Random(2)
    for _ in range(20):
        c1 = rng.uniform(0.05, 0.45)
        lo = math.asin(c1)
        p = ChainParamsUnequal(1.0, lo + rng.uniform(0.05, 0.95) * (math.pi / 6 - lo), c1)
        rep = check_regularity(candidate_geometry(_inst(Kind.STANDARD_CHAIN, p, math.inf), Cylinder()))
        assert rep.ok(1e-9)
        assert sorted(rep.degrees) == [3, 3, 3, 3]


def test_regularity_band_lens_and_hex():
    g = candidate_geometry(_inst(Kind.BAND_LENS, BandLensParams(0.2, 0.3)), FlatTorus())
    assert check_regularity(g).ok()
    g = candidate_geometry(_inst(Kind.HEXAGON_TILING, HexTilingParams(0.2, 0.3, 0.5), math.sqrt(3) / 2),
                           FlatTorus.hexagonal())
    rep = check_regularity(g)
    assert rep.ok() and rep.degrees == [3] * 6


def test_regularity_negative_control():
    chain = ChainParamsUnequal(1.0, 0.35, 0.25)
    g = candidate_geometry(_inst(Kind.STANDARD_CHAIN, chain, math.inf), Cylinder())
    assert check_regularity(g).ok()
    assert check_regularity(perturb_vertex(g, 0, (1e-3, 0.0))).max_angle_error > 1e-4
    hexes = _inst(Kind.HEXAGON_TILING, HexTilingParams(0.2, 0.3, 0.5), math.sqrt(3) / 2)
    g = candidate_geometry(hexes, FlatTorus.hexagonal())
    assert check_regularity(perturb_vertex(g, 2, (0.0, 1e-3))).max_angle_error > 1e-4


def test_sdb_vertex_shift_is_a_similarity():
    # all three arcs share one chord, so moving a vertex with bulges kept stays regular
    g = candidate_geometry(_inst(Kind.STANDARD_DOUBLE_BUBBLE, SdbParams(0.2, 0.3)), FlatTorus())
    assert check_regularity(perturb_vertex(g, 0, (1e-3, 0.0))).ok()


def test_regularity_detects_mislabeled_network():
    g = candidate_geometry(_inst(Kind.STANDARD_DOUBLE_BUBBLE, SdbParams(0.2, 0.3)), FlatTorus())
    g.interfaces[0] = g.interfaces[0].__class__(g.interfaces[0].edge, 0, 0)
    with pytest.raises(DomainError):
        check_regularity(g)


def test_certify_all_families():
    rng = random.Random(9)
    for kind in Kind:
        for _ in range(5):
            inst, space = random_instance(kind, rng)
            c = certify(inst, space, 5000)
            assert c.area_error < 1e-5 and c.perimeter_error < 1e-5


def test_inequality_examples():
    assert g_function(math.pi / 6) == pytest.approx(0.729009112317964, rel=1e-12)
    assert abs(g_function(1e-9)) < 1e-8
    assert abs(g_function(math.pi / 3 - 1e-9)) < 1e-8
    assert octagon_square_quotient(math.pi / 3) == pytest.approx(2.0, abs=1e-12)
    assert octagon_square_quotient(math.pi / 2) == pytest.approx(1 + math.sqrt(2), rel=1e-12)


def test_verify_inequalities():
    rep = verify_inequalities(2000)
    assert rep.ok
    assert rep.octagon_argmin == pytest.approx(math.pi / 3, abs=1e-3)
    with pytest.raises(DomainError):
        verify_inequalities(50)
