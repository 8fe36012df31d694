"""Certified structure detectors and coloring-number tools for graphs that
exclude long induced cycles and large bicliques, plus an experiment harness."""

from .graph import (Graph, OrientedPath, PathFamily, VertexSet,
                    are_anticomplete, is_independent,
                    is_partially_anticomplete, verify_induced_cycle,
                    verify_induced_path)
from .certificates import (BicliqueWitness, Certificate, EliminationOrder,
                           IndependentSetWitness, InducedCycle,
                           LowDegreeVertex, SubdividedStarWitness,
                           verify_certificate)
from .detect import BudgetExceeded

__all__ = [
    "Graph", "OrientedPath", "PathFamily", "VertexSet",
    "are_anticomplete", "is_independent", "is_partially_anticomplete",
    "verify_induced_cycle", "verify_induced_path",
    "BicliqueWitness", "Certificate", "EliminationOrder",
    "IndependentSetWitness", "InducedCycle", "LowDegreeVertex",
    "SubdividedStarWitness", "verify_certificate", "BudgetExceeded",
]

__version__ = "0.1.0"
