import math
import xml.etree.ElementTree as ET

import pytest

from torusbubble.arc_geometry import ArcEdge, ArcPath, path_area
from torusbubble.errors import DomainError
from torusbubble.portrait import compute_portrait
from torusbubble.render import (
    RenderStyle,
    parse_path_d,
    path_d,
    render_instance_svg,
    render_portrait_svg,
)
from torusbubble.solver import best_double_bubble
from torusbubble.torus import Cylinder, FlatTorus, Strip

NS = "{http://www.w3.org/2000/svg}"


def _parse(svg):
    return ET.fromstring(svg.encode())


def _remeasure(svg):
    out = {}
    for el in _parse(svg).iter(NS + "path"):
        if el.get("class") == "region base":
            fac = float(el.get("data-area-factor"))
            out[int(el.get("data-region"))] = fac * sum(path_area(p) for p in parse_path_d(el.get("d")))
    return out


CASES = [
    (FlatTorus(), 0.02, 0.03),
    (FlatTorus(), 0.2, 0.45),
    (FlatTorus(), 0.1, 0.2),
    (FlatTorus(), 0.33, 0.33),
    (FlatTorus.hexagonal(), 0.2, 0.45),
    (FlatTorus.hexagonal(), 0.25, 0.3),
    (FlatTorus(1.2, math.pi / 2), 0.02, 0.6),
    (Cylinder(), 0.05, 0.4),
    (Strip(), 0.3, 0.1),
]


@pytest.mark.parametrize("space,a1,a2", CASES)
def test_instance_svg_areas_round_trip(space, a1, a2):
    rep = best_double_bubble(space, a1, a2)
    for w in rep.feasible[:6]:
        svg = render_instance_svg(w, space)
        areas = _remeasure(svg)
        for label, want in zip((1, 2, 0), w.areas):
            if label in areas:
                assert areas[label] == pytest.approx(want, rel=1e-6)


def test_instance_svg_structure():
    rep = best_double_bubble(FlatTorus.hexagonal(), math.sqrt(3) / 6, math.sqrt(3) / 6)
    kinds = {str(w.kind): w for w in rep.winners}
    svg = render_instance_svg(kinds["DoubleBand"], FlatTorus.hexagonal())
    root = _parse(svg)
    base = [e for e in root.iter(NS + "path") if e.get("class") == "interface base"]
    assert len(base) == 3 and all(" A " not in e.get("d") for e in base)
    svg = render_instance_svg(kinds["HexagonTiling"], FlatTorus.hexagonal())
    assert len([e for e in _parse(svg).iter(NS + "path") if e.get("class") == "interface base"]) == 9
    assert "http://" not in svg.replace('xmlns="http://www.w3.org/2000/svg"', "")


def test_arcs_are_true_arc_commands():
    rep = best_double_bubble(FlatTorus(), 0.1, 0.2)
    svg = render_instance_svg(rep.winners[0], FlatTorus())
    assert " A " in svg


def test_path_d_round_trip_large_bulge():
    e = ArcEdge((0.0, 0.0), (0.3, 0.1), 2.5)
    p = ArcPath([e, ArcEdge((0.3, 0.1), (0.0, 0.0))])
    back = parse_path_d(path_d(p))
    assert len(back) == 1
    assert path_area(back[0]) == pytest.approx(path_area(p), rel=1e-8)


def test_portrait_svg():
    g = compute_portrait(FlatTorus(), 2)
    root = _parse(render_portrait_svg(g))
    rects = [e for e in root.iter(NS + "rect") if e.get("data-winner")]
    assert len(rects) == 1
    texts = [e.text for e in root.iter(NS + "text")]
    assert "A1" in texts and "A2" in texts and "HexagonTiling" in texts


def test_portrait_svg_hatches_ties():
    g = compute_portrait(FlatTorus.hexagonal(), 9, tie_tol=0.2)
    svg = render_portrait_svg(g)
    assert 'class="tie"' in svg
    assert 'class="tie"' not in render_portrait_svg(g, RenderStyle(tie_hatch=False))


def test_style_colors_distinct():
    with pytest.raises(DomainError):
        RenderStyle(region_colors=("#fff", "#FFF", "#000"))
