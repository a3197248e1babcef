"""Command line: solve, phase, render, verify."""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from dataclasses import fields

from .candidates import CandidateInstance, Kind
from .errors import ConvergenceError, DomainError, EmbeddingError
from .oracle import (
    certify,
    check_regularity,
    random_instance,
    verify_inequalities,
)
from .geometry import candidate_geometry
from .portrait import compute_portrait, write_csv
from .render import render_instance_svg, render_portrait_svg
from .solver import DEFAULT_SWEEP, DEFAULT_TIE_TOL, SolveReport, best_double_bubble
from .torus import Cylinder, FlatTorus, HomologyClass, Space, Strip

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CONVERGENCE = 0, 1, 2, 3
SCHEMA = "torusbubble.solve/1"


def parse_torus(text: str) -> FlatTorus:
    if text.strip().lower() == "hex":
        return FlatTorus.hexagonal()
    try:
        l_str, deg_str = text.split(",")
        side, deg = float(l_str), float(deg_str)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected L,degrees or hex, got {text!r}")
    if not side >= 1.0:
        raise argparse.ArgumentTypeError(f"L must be >= 1, got {side}")
    if not 60.0 <= deg <= 90.0:
        raise argparse.ArgumentTypeError(f"angle must be in [60, 90] degrees, got {deg}")
    return FlatTorus.from_degrees(side, deg)


def parse_areas(text: str) -> tuple[float, float]:
    try:
        a1, a2 = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A1,A2, got {text!r}")
    return a1, a2


def _space(args) -> Space:
    if args.torus is not None:
        if args.space not in (None, "torus"):
            raise DomainError("--torus and --space cylinder/strip are exclusive")
        return args.torus
    if args.space == "cylinder":
        return Cylinder()
    if args.space == "strip":
        return Strip()
    return FlatTorus()


def angle_degrees(space: FlatTorus) -> float:
    """Degrees for output; integer inputs come back exactly."""
    deg = math.degrees(space.angle)
    return float(round(deg)) if abs(deg - round(deg)) < 1e-9 else deg


def space_doc(space: Space) -> dict:
    if isinstance(space, FlatTorus):
        return {"type": "torus", "L": space.side_l, "angle_deg": angle_degrees(space), "area": space.area}
    return {"type": str(space), "area": None}


def _num(x: float):
    return None if math.isinf(x) else x


def instance_doc(inst: CandidateInstance) -> dict:
    params = {}
    for f in fields(inst.params):
        v = getattr(inst.params, f.name)
        params[f.name] = [v.p, v.q] if isinstance(v, HomologyClass) else v
    return {
        "kind": str(inst.kind),
        "family": type(inst.params).__name__,
        "params": params,
        "perimeter": inst.perimeter,
        "roles": list(inst.roles),
        "axis_flag": inst.axis_flag,
    }


def report_doc(rep: SolveReport) -> dict:
    a1, a2, a0 = rep.requested
    return {
        "schema": SCHEMA,
        "space": space_doc(rep.space),
        "areas": {"A1": a1, "A2": a2, "A0": _num(a0)},
        "min_perimeter": rep.min_perimeter,
        "winner_kinds": list(rep.winner_kinds),
        "winners": [instance_doc(w) for w in rep.winners],
        "feasible": [instance_doc(c) for c in rep.feasible],
        "flags": [f"axis length {w.params.axis_length:.9g} > 1" for w in rep.flagged],
        "diagnostics": list(rep.diagnostics),
    }


def _print_report(rep: SolveReport, out) -> None:
    a1, a2, a0 = rep.requested
    print(f"space: {rep.space}   A1={a1:.9g} A2={a2:.9g} A0={a0:.9g}", file=out)
    print(f"winner: {'+'.join(rep.winner_kinds)}   perimeter {rep.min_perimeter:.9f}", file=out)
    print(f"{'rank':>4}  {'kind':<22} {'perimeter':>13}  roles    params", file=out)
    for k, c in enumerate(rep.feasible, 1):
        mark = "*" if c in rep.winners else " "
        pstr = ", ".join(f"{key}={val}" if isinstance(val, list) else f"{key}={val:.6g}"
                         for key, val in instance_doc(c)["params"].items())
        print(f"{k:>4}{mark} {str(c.kind):<22} {c.perimeter:13.9f}  {c.roles}  {pstr}", file=out)
    for w in rep.flagged:
        print(f"warning: winning chain with axis length {w.params.axis_length:.6g} > 1", file=out)


def cmd_solve(args) -> int:
    space = _space(args)
    rep = best_double_bubble(space, *args.areas, tie_tol=args.tie_tol, sweep_resolution=args.sweep_resolution)
    _print_report(rep, sys.stdout)
    for d in rep.diagnostics:
        print(d, file=sys.stderr)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report_doc(rep), fh, indent=2)
            fh.write("\n")
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_instance_svg(rep.winners[0], space))
    return EXIT_OK


def cmd_render(args) -> int:
    space = _space(args)
    rep = best_double_bubble(space, *args.areas, tie_tol=args.tie_tol, sweep_resolution=args.sweep_resolution)
    pool = rep.winners if args.kind is None else [c for c in rep.feasible if str(c.kind) == args.kind]
    if not pool:
        print(f"no feasible {args.kind} for these areas", file=sys.stderr)
        return EXIT_INPUT
    with open(args.out_svg, "w") as fh:
        fh.write(render_instance_svg(pool[0], space))
    print(f"wrote {pool[0].kind} (perimeter {pool[0].perimeter:.9f}) to {args.out_svg}")
    return EXIT_OK


def cmd_phase(args) -> int:
    space = _space(args)
    if isinstance(space, Strip):
        raise DomainError("phase portraits are computed on a torus or the cylinder")
    grid = compute_portrait(space, args.resolution, args.tie_tol, args.sweep_resolution, args.jobs)
    if args.out_csv:
        write_csv(grid, args.out_csv)
    if args.out_svg:
        with open(args.out_svg, "w") as fh:
            fh.write(render_portrait_svg(grid))
    print(f"{space}, resolution {args.resolution}: {len(grid.cells)} cells")
    for kind, count in grid.counts().items():
        print(f"  {kind:<22} {count}")
    ties = sum(c.tie for c in grid.cells)
    print(f"  {'tie cells':<22} {ties}")
    return EXIT_OK


def _suite_formulas(samples: int, n: int) -> bool:
    rng = random.Random(20040101)
    ok = True
    for kind in Kind:
        worst_a = worst_p = worst_reg = 0.0
        for _ in range(samples):
            inst, space = random_instance(kind, rng)
            c = certify(inst, space, n)
            reg = check_regularity(candidate_geometry(inst, space))
            worst_a = max(worst_a, c.area_error)
            worst_p = max(worst_p, c.perimeter_error)
            worst_reg = max(worst_reg, reg.max_angle_error, reg.cocycle_residual, reg.curvature_consistency)
        passed = worst_a <= 1e-6 and worst_p <= 1e-6 and worst_reg <= 1e-9
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {str(kind):<22} area err {worst_a:.2e}  "
              f"perimeter err {worst_p:.2e}  regularity {worst_reg:.2e}")
    return ok


def _suite_inequalities(samples: int) -> bool:
    rep = verify_inequalities(samples)
    g_ok = rep.g_min > 0
    q_ok = rep.octagon_min_margin >= -1e-12 and rep.octagon_margin_away > 0
    print(f"{'PASS' if g_ok else 'FAIL'}  g(theta) > 0 on (0, pi/3): min {rep.g_min:.3e} at theta={rep.g_argmin:.6f}")
    print(f"{'PASS' if q_ok else 'FAIL'}  octagon-square quotient >= 2: min margin {rep.octagon_min_margin:.3e} "
          f"at phi={rep.octagon_argmin:.9f}, margin away from pi/3 {rep.octagon_margin_away:.3e}")
    return g_ok and q_ok


def cmd_verify(args) -> int:
    ok = True
    if args.suite in ("formulas", "all"):
        ok &= _suite_formulas(args.samples, args.quadrature_n)
    if args.suite in ("inequalities", "all"):
        ok &= _suite_inequalities(max(100, args.inequality_samples))
    return EXIT_OK if ok else EXIT_VERIFY


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--torus", type=parse_torus, help="torus as L,degrees (L>=1, 60..90) or 'hex'")
    p.add_argument("--space", choices=["torus", "cylinder", "strip"], help="default: unit square torus")
    p.add_argument("--tie-tol", type=float, default=DEFAULT_TIE_TOL)
    p.add_argument("--sweep-resolution", type=int, default=DEFAULT_SWEEP)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torusbubble", description="Double bubbles on flat tori, cylinders and strips")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimizing double bubble for two areas")
    _common(p)
    p.add_argument("--areas", type=parse_areas, required=True, metavar="A1,A2")
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("render", help="draw a winner (or the best instance of --kind)")
    _common(p)
    p.add_argument("--areas", type=parse_areas, required=True, metavar="A1,A2")
    p.add_argument("--kind", choices=[str(k) for k in Kind])
    p.add_argument("--out-svg", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("phase", help="phase portrait over area pairs")
    _common(p)
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--out-csv")
    p.add_argument("--out-svg")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("verify", help="oracle and inequality suites")
    p.add_argument("--suite", choices=["formulas", "inequalities", "all"], default="all")
    p.add_argument("--samples", type=int, default=200, help="random parameter points per family")
    p.add_argument("--quadrature-n", type=int, default=20_000)
    p.add_argument("--inequality-samples", type=int, default=10_000)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "resolution", 2) < 2:
        parser.error("--resolution must be at least 2")
    if getattr(args, "sweep_resolution", 2) < 2:
        parser.error("--sweep-resolution must be at least 2")
    try:
        return args.func(args)
    except (DomainError, EmbeddingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
