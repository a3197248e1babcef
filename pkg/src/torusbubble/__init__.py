"""Perimeter-minimizing double bubbles on flat two-tori, the cylinder and the strip."""

from .arc_geometry import ArcChordParams, ArcEdge, ArcPath, arc_length, chord_area, path_area
from .candidates import CandidateInstance, Kind, forward
from .errors import ConvergenceError, DomainError, EmbeddingError
from .geometry import candidate_geometry
from .solver import SolveReport, best_double_bubble, solve_strip
from .torus import Cylinder, FlatTorus, HomologyClass, Strip

__version__ = "0.1.0"

__all__ = [
    "ArcChordParams", "ArcEdge", "ArcPath", "arc_length", "chord_area", "path_area",
    "CandidateInstance", "Kind", "forward",
    "ConvergenceError", "DomainError", "EmbeddingError",
    "candidate_geometry", "SolveReport", "best_double_bubble", "solve_strip",
    "Cylinder", "FlatTorus", "HomologyClass", "Strip",
]
