import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusbubble.candidates import (
    EQUAL_CHAIN_K,
    LENS_K,
    ChainParamsEqual,
    ChainParamsUnequal,
    HexTilingParams,
    Kind,
    SdbParams,
    chain_eval_unequal,
    forward,
    hex_eval,
    sdb_evaluate,
)
from torusbubble.errors import DomainError
from torusbubble.solver import (
    band_lens_solve,
    best_double_bubble,
    chain_solve,
    hex_exists,
    hex_newton,
    hex_solve,
    sdb_solve,
    solve_strip,
)
from torusbubble.torus import Cylinder, FlatTorus, HomologyClass, Strip

HEX = FlatTorus.hexagonal()
SQUARE = FlatTorus()


def test_sdb_equal_areas():
    inst = sdb_solve(0.05, 0.05)
    assert inst.params.theta == 0.0
    assert inst.params.C == pytest.approx(0.243617211824764, rel=1e-12)
    assert inst.perimeter == pytest.approx(1.42194452895615, rel=1e-12)


def test_sdb_too_big_does_not_fit():
    reasons = []
    assert sdb_solve(0.3, 0.3, reasons=reasons) is None
    assert "diameter" in reasons[0]


@settings(max_examples=150, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.02, 0.3))
def test_sdb_round_trip(theta, C):
    ev = sdb_evaluate(SdbParams(theta, C))
    inst = sdb_solve(ev.area_low, ev.area_high)
    if inst is None:
        assert ev.diameter > 1
        return
    assert inst.params.theta == pytest.approx(theta, abs=1e-8)
    back = forward(inst.kind, inst.params)
    assert back[0] == pytest.approx(ev.area_high, rel=1e-10)
    assert back[1] == pytest.approx(ev.area_low, rel=1e-10)
    # the smaller cap is always the high-pressure role
    if ev.area_high < ev.area_low:
        assert inst.roles[:2] == (2, 1)


def test_band_lens_solve_example():
    inst = band_lens_solve(SQUARE, 0.1, 0.3)
    assert inst.params.r == pytest.approx(0.285322126816779, rel=1e-12)
    assert inst.params.d == pytest.approx(0.35, rel=1e-14)
    assert inst.perimeter == pytest.approx(2.70096210984867, rel=1e-12)


def test_band_lens_infeasible():
    reasons = []
    assert band_lens_solve(Cylinder(), 2 * LENS_K / 3 + 1e-3, 0.5, reasons=reasons) is None
    assert band_lens_solve(Cylinder(), 0.1, 1e-4, reasons=reasons) is None
    assert band_lens_solve(SQUARE, 0.1, 0.85, reasons=reasons) is None
    assert len(reasons) == 3


def test_chain_equal_examples():
    inst = chain_solve(1.0, EQUAL_CHAIN_K, EQUAL_CHAIN_K)
    assert isinstance(inst.params, ChainParamsEqual)
    assert inst.params.c3 == pytest.approx(0.0, abs=1e-15)
    assert inst.perimeter == pytest.approx(2 * math.pi / 3, rel=1e-14)
    inst = chain_solve(1.0, 0.1452930368530398, 0.1452930368530398)
    assert inst.params.c3 == pytest.approx(0.2, rel=1e-12)
    assert inst.perimeter == pytest.approx(2.49439510239320, rel=1e-12)


def test_chain_equal_too_small():
    assert chain_solve(1.0, 0.04, 0.04) is None


def test_chain_unequal_reference_point():
    ev = chain_eval_unequal(ChainParamsUnequal(1.0, 0.35, 0.25))
    inst = chain_solve(1.0, ev.area_low, ev.area_high)
    assert inst.perimeter <= ev.perimeter + 1e-9
    back = forward(inst.kind, inst.params)
    assert inst.role_area(0) == pytest.approx(back[0], rel=1e-9)
    assert inst.role_area(1) == pytest.approx(back[1], rel=1e-9)
    assert inst.roles[:2] == (2, 1)


def test_chain_outside_family():
    reasons = []
    assert chain_solve(1.0, 1e-6, 3.0, reasons=reasons) is None
    assert reasons


@settings(max_examples=80, deadline=None)
@given(st.floats(0.02, 0.98), st.floats(0.02, 0.98), st.sampled_from([1.0, 1.2, math.sqrt(2)]))
def test_chain_round_trip(s, t, L0):
    c1 = s * L0 / 2
    lo = math.asin(c1 / L0)
    p = ChainParamsUnequal(L0, lo + t * (math.pi / 6 - lo), c1)
    ev = chain_eval_unequal(p)
    inst = chain_solve(L0, ev.area_high, ev.area_low)
    assert inst is not None
    back = forward(inst.kind, inst.params)
    got = sorted(back[:2])
    assert got[0] == pytest.approx(min(ev.area_high, ev.area_low), rel=1e-8)
    assert got[1] == pytest.approx(max(ev.area_high, ev.area_low), rel=1e-8)
    assert inst.perimeter <= ev.perimeter + 1e-9
    assert inst.axis_flag == (L0 > 1)


def test_hex_solve_thirds():
    third = math.sqrt(3) / 6
    inst = hex_solve(HEX, third, third, third)
    for v in (inst.params.a, inst.params.b, inst.params.c):
        assert v == pytest.approx(1 / 3, abs=1e-12)
    assert inst.perimeter == 3.0


def test_hex_solve_rejections():
    reasons = []
    assert hex_solve(SQUARE, 0.3, 0.3, 0.4, reasons=reasons) is None
    assert hex_solve(HEX, 0.02, 0.02, math.sqrt(3) / 2 - 0.04, reasons=reasons) is None
    assert not hex_exists(0.02, 0.02, math.sqrt(3) / 2 - 0.04)
    assert len(reasons) == 2
    with pytest.raises(DomainError):
        hex_solve(HEX, 0.3, 0.3, 0.3)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 1.0), st.floats(0.05, 1.0), st.floats(0.05, 1.0))
def test_hex_round_trip_and_uniqueness(x, y, z):
    a, b = x / (x + y + z), y / (x + y + z)
    p = HexTilingParams(a, b, 1 - a - b)
    A1, A2, A0, _ = hex_eval(p)
    assert hex_exists(A1, A2, A0)
    inst = hex_solve(HEX, A1, A2, A0)
    assert (inst.params.a, inst.params.b) == pytest.approx((a, b), abs=1e-9)
    other = hex_newton(A1, A2, start=(0.6, 0.2))
    assert (other.a, other.b) == pytest.approx((inst.params.a, inst.params.b), abs=1e-9)


def test_best_examples():
    third = math.sqrt(3) / 6
    rep = best_double_bubble(HEX, third, third)
    assert rep.min_perimeter == pytest.approx(3.0, abs=1e-9)
    assert {"DoubleBand", "HexagonTiling"} <= set(rep.winner_kinds)
    rep = best_double_bubble(SQUARE, 0.02, 0.02)
    assert rep.winner_kinds == ("StandardDoubleBubble",)


def test_best_report_invariants():
    rng = random.Random(7)
    for _ in range(50):
        A1, A2 = rng.uniform(0.01, 0.6), rng.uniform(0.01, 0.35)
        rep = best_double_bubble(SQUARE, A1, A2)
        assert rep.winners and rep.min_perimeter <= 3 + 1e-12
        assert [c.perimeter for c in rep.feasible] == sorted(c.perimeter for c in rep.feasible)
        for w in rep.winners:
            back = forward(w.kind, w.params)
            if w.kind is not Kind.DOUBLE_BAND:
                assert w.role_area(0) == pytest.approx(back[0], rel=1e-8)
                assert w.role_area(1) == pytest.approx(back[1], rel=1e-8)


def test_best_symmetric_in_labels():
    rng = random.Random(3)
    for _ in range(30):
        A1, A2 = rng.uniform(0.01, 0.5), rng.uniform(0.01, 0.3)
        assert best_double_bubble(SQUARE, A1, A2).min_perimeter == best_double_bubble(SQUARE, A2, A1).min_perimeter


def test_cylinder_never_hexagon():
    rng = random.Random(11)
    for _ in range(40):
        rep = best_double_bubble(Cylinder(), rng.uniform(0.01, 1.5), rng.uniform(0.01, 1.5))
        assert all(c.kind is not Kind.HEXAGON_TILING for c in rep.feasible)
        assert all(c.roles[2] == 0 for c in rep.feasible)


def test_long_axis_chains_flagged_and_pruned():
    rep = best_double_bubble(FlatTorus(1.2, math.pi / 2), 0.2, 0.3)
    chains = [c for c in rep.feasible if c.kind is Kind.STANDARD_CHAIN]
    assert any(c.axis_flag and c.params.direction == HomologyClass(0, 1) for c in chains)
    rep = best_double_bubble(HEX, 0.2, 0.3)
    assert any("never minimizing" in d for d in rep.diagnostics)


@pytest.mark.parametrize("A1,A2", [(0.0, 0.1), (-0.1, 0.2), (0.6, 0.4), (0.7, 0.5)])
def test_degenerate_inputs_are_errors(A1, A2):
    with pytest.raises(DomainError):
        best_double_bubble(SQUARE, A1, A2)


def test_strip_is_half_cylinder():
    rng = random.Random(5)
    for _ in range(20):
        a1, a2 = rng.uniform(0.01, 0.8), rng.uniform(0.01, 0.8)
        s = solve_strip(a1, a2)
        c = best_double_bubble(Cylinder(), 2 * a1, 2 * a2)
        assert s.min_perimeter == c.min_perimeter / 2
        assert s.min_perimeter <= 1.5
        assert isinstance(s.space, Strip)
    assert best_double_bubble(Strip(), 0.1, 0.2).min_perimeter == solve_strip(0.1, 0.2).min_perimeter


def test_strip_tiny_equal_areas_half_sdb():
    rep = solve_strip(0.01, 0.01)
    assert rep.winner_kinds == ("StandardDoubleBubble",)
