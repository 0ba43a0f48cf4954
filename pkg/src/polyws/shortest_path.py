"""Two-point geodesics under the workspace budget.

The route: locate both endpoints in the balanced subdivision, walk the
unique cell path between them (the walls form a tree), and splice each
cell's boundary geodesics into a funnel, emitting path vertices as the apex
advances.  Exact arithmetic end to end; output is the minimal vertex
sequence of the geodesic.
"""

from __future__ import annotations

from typing import List, Optional

from .funnel import PathPt, geodesic_region, ppt
from .memory import BudgetedRun, OutputSink
from .polygon import Polygon, format_point
from .region import Region, whole_polygon
from .subdivision import BalancedSubdivision, build_subdivision


def shortest_path(poly: Polygon, sub: Optional[BalancedSubdivision], p, q,
                  run: BudgetedRun, sink: Optional[OutputSink] = None) -> List[PathPt]:
    """Geodesic from p to q inside the polygon.

    ``sub`` may be a prebuilt balanced subdivision (reused across queries);
    when None one is built for this run's s and released afterwards.
    Returns the path as (point, vertex-index-or-None) pairs and, when a sink
    is given, writes one record per path point.
    """
    region = whole_polygon(poly)
    p = tuple(p)
    q = tuple(q)
    if region.contains(p) < 0 or region.contains(q) < 0:
        raise ValueError("endpoint outside the polygon")
    pi = _vertex_index(poly, p)
    qi = _vertex_index(poly, q)
    path = geodesic_region(region, ppt(p, pi), ppt(q, qi), run.s, run, sub=sub)
    if sink is not None:
        for pt, idx, _ in path:
            sink.emit(f"V {idx}" if idx is not None else f"P {format_point(pt)}")
    return path


def _vertex_index(poly: Polygon, p) -> Optional[int]:
    try:
        return poly.vertices.index(p)
    except ValueError:
        return None
