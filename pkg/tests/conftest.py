import math

import pytest

from torusbubble.portrait import compute_portrait
from torusbubble.torus import Cylinder, FlatTorus

REFERENCE_TORI = {
    "hex": FlatTorus.hexagonal(),
    "rhombic75": FlatTorus.from_degrees(1.0, 75.0),
    "square": FlatTorus(),
    "rect1.2": FlatTorus(1.2, math.pi / 2),
}

_portraits = {}
_timings = {}
ACCEPTANCE = {}


def portrait(name, resolution=128):
    """Portraits are expensive; compute each once per session (single-threaded)."""
    import time

    key = (name, resolution)
    if key not in _portraits:
        space = Cylinder() if name == "cylinder" else REFERENCE_TORI[name]
        t0 = time.perf_counter()
        _portraits[key] = compute_portrait(space, resolution, jobs=1)
        _timings[key] = time.perf_counter() - t0
    return _portraits[key]


def portrait_seconds(name, resolution=128):
    portrait(name, resolution)
    return _timings[(name, resolution)]


@pytest.fixture
def record():
    """Record a one-line acceptance verdict for the terminal summary."""

    def _rec(number, ok, detail):
        ACCEPTANCE[number] = (bool(ok), detail)
        print(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")

    return _rec


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
