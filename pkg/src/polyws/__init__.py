"""Workspace-bounded algorithms on simple polygons.

A library and CLI for computing balanced subdivisions, two-point geodesics,
shortest-path trees and triangulations of a simple polygon under a strict
memory model: read-only input, write-only output and O(s) words of charged
workspace, verified against unrestricted-memory oracles.
"""

from .geometry import orient, rat, sheared_less, vertical_ray_hit
from .memory import BudgetedRun, BudgetFault, WorkspaceLedger
from .polygon import Polygon, PolygonError, dump_polygon, load_polygon
from .generators import generate_polygon

__all__ = [
    "orient",
    "rat",
    "sheared_less",
    "vertical_ray_hit",
    "BudgetedRun",
    "BudgetFault",
    "WorkspaceLedger",
    "Polygon",
    "PolygonError",
    "load_polygon",
    "dump_polygon",
    "generate_polygon",
]
