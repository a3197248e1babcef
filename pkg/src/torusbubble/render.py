"""SVG drawings of candidate configurations and phase portraits."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .arc_geometry import ArcEdge, ArcPath, Point
from .candidates import CandidateInstance, Kind
from .errors import DomainError
from .geometry import CandidateGeometry, candidate_geometry
from .portrait import PortraitGrid
from .torus import Cylinder, FlatTorus, Space, Strip, torus_area

PX = 1000.0  # drawing units per unit length
MAX_PIECE_BULGE = math.pi / 4

KIND_COLORS = {
    Kind.STANDARD_DOUBLE_BUBBLE: "#4e79a7",
    Kind.STANDARD_CHAIN: "#f28e2b",
    Kind.BAND_LENS: "#59a14f",
    Kind.DOUBLE_BAND: "#e15759",
    Kind.HEXAGON_TILING: "#b07aa1",
}


@dataclass(frozen=True)
class RenderStyle:
    region_colors: tuple[str, str, str] = ("#fbb4ae", "#b3cde3", "#eeeeee")  # regions 1, 2, 0
    stroke_width: float = 0.006
    show_fundamental_domain: bool = True
    tie_hatch: bool = True

    def __post_init__(self):
        if len(set(c.lower() for c in self.region_colors)) != 3:
            raise DomainError("region colors must be three distinct colors")

    def color(self, label: int) -> str:
        return self.region_colors[{1: 0, 2: 1, 0: 2}[label]]


def _f(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _pt(p: Point) -> str:
    return f"{_f(p[0] * PX)} {_f(p[1] * PX)}"


def edge_commands(e: ArcEdge) -> list[str]:
    """Path commands (after the initial moveto) drawing one edge."""
    if e.bulge == 0.0:
        return [f"L {_pt(e.end)}"]
    pieces = max(1, math.ceil(abs(e.bulge) / MAX_PIECE_BULGE - 1e-12))
    out = []
    for piece in e.split(pieces) if pieces > 1 else [e]:
        sweep = 0 if piece.bulge > 0 else 1
        r = _f(piece.radius * PX)
        out.append(f"A {r} {r} 0 0 {sweep} {_pt(piece.end)}")
    return out


def path_d(path: ArcPath) -> str:
    cmds = [f"M {_pt(path.edges[0].start)}"]
    for e in path.edges:
        cmds.extend(edge_commands(e))
    if path.closed:
        cmds.append("Z")
    return " ".join(cmds)


_TOKEN = re.compile(r"[MLAZ]|-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?")


def parse_path_d(d: str) -> list[ArcPath]:
    """Inverse of ``path_d`` for the absolute M/L/A/Z subset emitted here."""
    toks = _TOKEN.findall(d)
    paths: list[ArcPath] = []
    edges: list[ArcEdge] = []
    cur = start = None
    i = 0

    def num():
        nonlocal i
        i += 1
        return float(toks[i - 1]) / PX

    while i < len(toks):
        cmd = toks[i]
        i += 1
        if cmd == "M":
            if edges:
                paths.append(ArcPath(edges, closed=False))
                edges = []
            cur = start = (num(), num())
        elif cmd == "L":
            nxt = (num(), num())
            edges.append(ArcEdge(cur, nxt))
            cur = nxt
        elif cmd == "A":
            r = num()
            num()
            i += 3  # rotation, large-arc, sweep are read below
            sweep = int(toks[i - 1])
            nxt = (num(), num())
            chord = math.hypot(nxt[0] - cur[0], nxt[1] - cur[1])
            b = math.asin(min(1.0, chord / (2 * r)))
            edges.append(ArcEdge(cur, nxt, b if sweep == 0 else -b))
            cur = nxt
        elif cmd == "Z":
            if math.hypot(cur[0] - start[0], cur[1] - start[1]) > 0:
                edges.append(ArcEdge(cur, start))
            # snap the closing point exactly
            last = edges[-1]
            edges[-1] = ArcEdge(last.start, edges[0].start, last.bulge)
            paths.append(ArcPath(edges))
            edges = []
            cur = start
        else:
            raise DomainError(f"unexpected token {cmd!r}")
    if edges:
        paths.append(ArcPath(edges, closed=False))
    return paths


# ---------------------------------------------------------------- instances


def _bbox(g: CandidateGeometry) -> tuple[float, float, float, float]:
    xs, ys = [], []
    for i in g.interfaces:
        for k in range(17):
            x, y = i.edge.point_at(k / 16)
            xs.append(x)
            ys.append(y)
    return min(xs), min(ys), max(xs), max(ys)


def _window(g: CandidateGeometry, space: Space) -> tuple[list[Point], list[Point]]:
    """(clip polygon, lattice offsets) for the drawing."""
    if isinstance(space, FlatTorus):
        u, v = space.u, space.v
        clip = [(0.0, 0.0), u, (u[0] + v[0], u[1] + v[1]), v]
        offs = [(i * u[0] + j * v[0], i * u[1] + j * v[1]) for i in (-1, 0, 1) for j in (-1, 0, 1)]
        return clip, offs
    _, y0, _, y1 = _bbox(g)
    pad = 0.15
    width = 0.5 if isinstance(space, Strip) else 1.0
    clip = [(0.0, y0 - pad), (width, y0 - pad), (width, y1 + pad), (0.0, y1 + pad)]
    return clip, [(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]


def render_instance_svg(inst: CandidateInstance, space: Space, style: RenderStyle | None = None) -> str:
    style = style or RenderStyle()
    g = candidate_geometry(inst, space)
    clip, offs = _window(g, space)
    xs = [p[0] for p in clip]
    ys = [p[1] for p in clip]
    m = 0.05
    x0, x1, y0, y1 = min(xs) - m, max(xs) + m, min(ys) - m, max(ys) + m
    vb = f"{_f(x0 * PX)} {_f(-y1 * PX)} {_f((x1 - x0) * PX)} {_f((y1 - y0) * PX)}"
    sw = _f(style.stroke_width * PX)
    clip_d = " ".join(["M " + _pt(clip[0])] + ["L " + _pt(p) for p in clip[1:]] + ["Z"])
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vb}" '
        f'width="{_f((x1 - x0) * 500)}" height="{_f((y1 - y0) * 500)}">',
        f"<title>{inst.kind} on {space}, perimeter {inst.perimeter:.9g}</title>",
        f'<defs><clipPath id="domain"><path d="{clip_d}"/></clipPath></defs>',
        '<g transform="scale(1,-1)">',
        '<g clip-path="url(#domain)">',
    ]
    for label in sorted(g.regions):
        d = " ".join(path_d(p) for p in g.regions[label])
        color = style.color(label)
        for dx, dy in offs:
            base = dx == 0 and dy == 0
            attrs = f'class="region{" base" if base else ""}" data-region="{label}" data-area-factor="{g.scale}"'
            tr = "" if base else f' transform="translate({_f(dx * PX)},{_f(dy * PX)})"'
            out.append(f'<path {attrs} d="{d}" fill="{color}" fill-rule="nonzero" stroke="none"{tr}/>')
    for k, iface in enumerate(g.interfaces):
        d = path_d(ArcPath([iface.edge], closed=False))
        for dx, dy in offs:
            base = dx == 0 and dy == 0
            tr = "" if base else f' transform="translate({_f(dx * PX)},{_f(dy * PX)})"'
            out.append(f'<path class="interface{" base" if base else ""}" data-left="{iface.left}" '
                       f'data-right="{iface.right}" d="{d}" fill="none" stroke="black" '
                       f'stroke-width="{sw}" stroke-linecap="round"{tr}/>')
    out.append("</g>")
    if style.show_fundamental_domain:
        out.append(f'<path class="domain" d="{clip_d}" fill="none" stroke="#555555" '
                   f'stroke-width="{_f(style.stroke_width * PX / 2)}" stroke-dasharray="{_f(0.02 * PX)}"/>')
    out += ["</g>", "</svg>", ""]
    return "\n".join(out)


# ---------------------------------------------------------------- portraits

_PW = 500.0  # plot width in drawing units
_MARGIN = 60.0


def render_portrait_svg(grid: PortraitGrid, style: RenderStyle | None = None) -> str:
    style = style or RenderStyle()
    n = grid.resolution
    extent = grid.step * n
    s = _PW / extent

    def X(a):
        return _MARGIN + a * s

    def Y(a):
        return _MARGIN + _PW - a * s

    W = _PW + 2 * _MARGIN + 190
    H = _PW + 2 * _MARGIN
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_f(W)} {_f(H)}" width="{_f(W)}" height="{_f(H)}">',
        f"<title>Phase portrait on {grid.space}, resolution {n}</title>",
        "<defs>",
        '<pattern id="tie" patternUnits="userSpaceOnUse" width="6" height="6" patternTransform="rotate(45)">',
        '<line x1="0" y1="0" x2="0" y2="6" stroke="black" stroke-width="1.5"/>',
        "</pattern>",
        "</defs>",
        '<g class="cells">',
    ]
    h = grid.step * s
    for c in grid.cells:
        fill = KIND_COLORS[Kind(c.winner_kinds[0])]
        x, y = X(c.A1 - grid.step / 2), Y(c.A2 + grid.step / 2)
        out.append(f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(h)}" height="{_f(h)}" fill="{fill}" '
                   f'data-winner="{c.label}"/>')
        if c.tie and style.tie_hatch:
            out.append(f'<rect class="tie" x="{_f(x)}" y="{_f(y)}" width="{_f(h)}" height="{_f(h)}" fill="url(#tie)"/>')
    out.append("</g>")
    # axes
    out.append(f'<path class="axes" d="M {_f(X(0))} {_f(Y(extent))} L {_f(X(0))} {_f(Y(0))} L {_f(X(extent))} {_f(Y(0))}" '
               'fill="none" stroke="black" stroke-width="1.5"/>')
    if isinstance(grid.space, FlatTorus):
        out.append(f'<path class="simplex" d="M {_f(X(0))} {_f(Y(extent))} L {_f(X(extent))} {_f(Y(0))}" '
                   'fill="none" stroke="black" stroke-width="0.75"/>')
    for k in range(5):
        a = extent * k / 4
        out.append(f'<text x="{_f(X(a))}" y="{_f(Y(0) + 18)}" font-size="12" text-anchor="middle">{a:.3g}</text>')
        out.append(f'<text x="{_f(X(0) - 8)}" y="{_f(Y(a) + 4)}" font-size="12" text-anchor="end">{a:.3g}</text>')
    out.append(f'<text x="{_f(X(extent / 2))}" y="{_f(H - 12)}" font-size="15" text-anchor="middle">A1</text>')
    out.append(f'<text x="16" y="{_f(Y(extent / 2))}" font-size="15" text-anchor="middle">A2</text>')
    # legend
    lx = _MARGIN + _PW + 30
    out.append('<g class="legend">')
    for k, kind in enumerate(Kind):
        y = _MARGIN + 24 * k
        out.append(f'<rect x="{_f(lx)}" y="{_f(y)}" width="16" height="16" fill="{KIND_COLORS[kind]}"/>')
        out.append(f'<text x="{_f(lx + 24)}" y="{_f(y + 13)}" font-size="12">{kind}</text>')
    if style.tie_hatch:
        y = _MARGIN + 24 * len(Kind)
        out.append(f'<rect x="{_f(lx)}" y="{_f(y)}" width="16" height="16" fill="url(#tie)" stroke="black"/>')
        out.append(f'<text x="{_f(lx + 24)}" y="{_f(y + 13)}" font-size="12">tie</text>')
    out += ["</g>", "</svg>", ""]
    return "\n".join(out)
