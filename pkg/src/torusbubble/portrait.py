"""Phase portraits: winner kinds over a grid of prescribed area pairs."""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import DomainError
from .solver import DEFAULT_SWEEP, DEFAULT_TIE_TOL, best_double_bubble
from .torus import Cylinder, FlatTorus, Space, Strip, torus_area

CYLINDER_WINDOW = 1.5


@dataclass(frozen=True)
class PortraitCell:
    i: int
    j: int
    A1: float
    A2: float
    A0: float
    winner_kinds: tuple[str, ...]
    min_perimeter: float
    # best perimeter reached by each feasible kind in this cell
    kind_perimeters: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def tie(self) -> bool:
        return len(self.winner_kinds) > 1

    @property
    def label(self) -> str:
        return "+".join(self.winner_kinds)


@dataclass
class PortraitGrid:
    space: Space
    resolution: int
    cells: list[PortraitCell]
    step: float
    tie_tol: float = DEFAULT_TIE_TOL

    def by_index(self) -> dict[tuple[int, int], PortraitCell]:
        return {(c.i, c.j): c for c in self.cells}

    def counts(self) -> dict[str, int]:
        """Cells per winner kind (a tie cell counts for each of its kinds)."""
        out: dict[str, int] = {}
        for c in self.cells:
            for k in c.winner_kinds:
                out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items()))


def grid_indices(space: Space, resolution: int) -> tuple[float, list[tuple[int, int]]]:
    """Cell side and the (i, j) indices of cells whose centers lie strictly inside."""
    if resolution < 2:
        raise DomainError("resolution must be at least 2")
    n = resolution
    if isinstance(space, FlatTorus):
        h = torus_area(space) / n
        return h, [(i, j) for i in range(n) for j in range(n) if i + j <= n - 2]
    if isinstance(space, (Cylinder, Strip)):
        return CYLINDER_WINDOW / n, [(i, j) for i in range(n) for j in range(n)]
    raise DomainError(f"unknown space {space!r}")


def _solve_cell(args) -> PortraitCell:
    space, i, j, h, tie_tol, sweep = args
    A1, A2 = (i + 0.5) * h, (j + 0.5) * h
    try:
        rep = best_double_bubble(space, A1, A2, tie_tol, sweep)
    except Exception as exc:
        raise RuntimeError(f"cell ({i}, {j}) at areas ({A1!r}, {A2!r}): {exc}") from exc
    per_kind: dict[str, float] = {}
    for inst in rep.feasible:
        per_kind.setdefault(str(inst.kind), inst.perimeter)
    return PortraitCell(i, j, A1, A2, rep.requested[2], rep.winner_kinds, rep.min_perimeter, per_kind)


def _solve_chunk(chunk):
    return [_solve_cell(a) for a in chunk]


def compute_portrait(space: Space, resolution: int, tie_tol: float = DEFAULT_TIE_TOL,
                     sweep_resolution: int = DEFAULT_SWEEP, jobs: Optional[int] = 1) -> PortraitGrid:
    """Classify the winner at every cell center.

    ``jobs`` > 1 fans rows out to worker processes; cells are assembled in
    index order so the result does not depend on scheduling.
    """
    h, idx = grid_indices(space, resolution)
    tasks = [(space, i, j, h, tie_tol, sweep_resolution) for i, j in idx]
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(tasks) < 64:
        cells = [_solve_cell(t) for t in tasks]
    else:
        size = max(16, len(tasks) // (jobs * 8))
        chunks = [tasks[k:k + size] for k in range(0, len(tasks), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = [c for part in pool.map(_solve_chunk, chunks) for c in part]
    return PortraitGrid(space, resolution, cells, h, tie_tol)


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:.9g}"


def csv_text(grid: PortraitGrid) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["A1", "A2", "A0", "winner", "perimeter", "tie"])
    for c in grid.cells:
        w.writerow([_fmt(c.A1), _fmt(c.A2), _fmt(c.A0), c.label, _fmt(c.min_perimeter), int(c.tie)])
    return buf.getvalue()


def write_csv(grid: PortraitGrid, destination) -> None:
    """Write to a path or an open text stream."""
    text = csv_text(grid)
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", newline="") as fh:
            fh.write(text)


def read_csv(source) -> list[dict]:
    with open(source, newline="") as fh:
        return list(csv.DictReader(fh))


# ---------------------------------------------------------------- properties


def _neighbors(i, j):
    return ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1))


def isolated_cells(grid: PortraitGrid) -> list[PortraitCell]:
    """Cells sharing no winner kind with any of their 4-neighbors."""
    cells = grid.by_index()
    out = []
    for c in grid.cells:
        nbrs = [cells[k] for k in _neighbors(c.i, c.j) if k in cells]
        if nbrs and not any(set(c.winner_kinds) & set(n.winner_kinds) for n in nbrs):
            out.append(c)
    return out


def contiguity_violations(grid: PortraitGrid, factor: float = 10.0) -> list[PortraitCell]:
    """Isolated cells whose win is not a near tie with a neighboring phase."""
    cells = grid.by_index()
    tol = factor * grid.tie_tol
    bad = []
    for c in isolated_cells(grid):
        rivals = {k for n in _neighbors(c.i, c.j) if n in cells for k in cells[n].winner_kinds}
        close = any(k in c.kind_perimeters and c.kind_perimeters[k] - c.min_perimeter <= tol for k in rivals)
        if not close:
            bad.append(c)
    return bad


def symmetry_defects(grid: PortraitGrid, tol: float = 1e-9) -> list[tuple[PortraitCell, PortraitCell]]:
    cells = grid.by_index()
    out = []
    for c in grid.cells:
        m = cells.get((c.j, c.i))
        if m is None or m.winner_kinds != c.winner_kinds or abs(m.min_perimeter - c.min_perimeter) > tol:
            out.append((c, m))
    return out


def phase_components(grid: PortraitGrid, kind: str) -> int:
    """Number of 4-connected components of cells whose winners include ``kind``."""
    cells = {k for k, c in grid.by_index().items() if kind in c.winner_kinds}
    seen: set = set()
    count = 0
    for start in sorted(cells):
        if start in seen:
            continue
        count += 1
        stack = [start]
        seen.add(start)
        while stack:
            cur = stack.pop()
            for n in _neighbors(*cur):
                if n in cells and n not in seen:
                    seen.add(n)
                    stack.append(n)
    return count


def corner_cells(grid: PortraitGrid) -> tuple[PortraitCell, PortraitCell]:
    """(small-areas corner, large-areas corner) along the diagonal A1 = A2.

    Relabeling symmetry makes every corner of the torus simplex look alike,
    so the large-areas corner is taken in the fundamental sector
    A1 <= A2 <= A0: the cell holding the equal-thirds point.  On the
    cylinder it is the far corner of the window.
    """
    diag = [c for c in grid.cells if c.i == c.j]
    if isinstance(grid.space, FlatTorus):
        third = torus_area(grid.space) / 3
        k = min(int(third / grid.step), diag[-1].i)
        return diag[0], next(c for c in diag if c.i == k)
    return diag[0], diag[-1]


def kinds_present(cells: Iterable[PortraitCell]) -> set[str]:
    return {k for c in cells for k in c.winner_kinds}
