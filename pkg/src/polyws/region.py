"""Boundary regions: simple sub-polygons of P addressed without copying it.

A Region's boundary is a clockwise cyclic list of pieces:

* ``ChainPiece`` - an arc of the polygon boundary between two positions,
  each position being (edge index, exact point on that edge);
* ``SegPiece`` - a straight segment (a subdivision wall, a path-edge
  extension, ...), its endpoints arbitrary exact points.

The whole polygon is the trivial one-piece region.  Regions are the common
currency of the package: subdivision cells, SPT subproblems and wedge
regions are all Regions, so the geodesic machinery works uniformly.

A region of m corners supports indexed vertex access in O(1) after an
O(#pieces) constructor; a vertex access through a run costs one input read.
Boundary positions are canonical: a point equal to a polygon vertex v_i is
always addressed as (i, v_i), the start of edge i.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .geometry import (UP, lex_cmp, on_segment, ray_hit_segment, seg_param_cmp,
                       signed_area2)
from .polygon import Polygon

PolyPos = Tuple[int, tuple]  # (edge index, exact point on that edge)


def canonical_pos(poly: Polygon, edge: int, point) -> PolyPos:
    """Normalize (edge, point): vertex coincidences resolve to the start of
    the vertex's outgoing edge."""
    n = poly.n
    edge %= n
    nxt = (edge + 1) % n
    if tuple(point) == poly.vertices[nxt]:
        return (nxt, poly.vertices[nxt])
    return (edge, tuple(point))


def vertex_pos(poly: Polygon, i: int) -> PolyPos:
    i %= poly.n
    return (i, poly.vertices[i])


def poly_pos_cmp(poly: Polygon, a: PolyPos, b: PolyPos) -> int:
    """Order of two boundary positions clockwise from v0."""
    if a[0] != b[0]:
        return -1 if a[0] < b[0] else 1
    va, vb = poly.vertices[a[0]], poly.vertices[(a[0] + 1) % poly.n]
    return seg_param_cmp(va, vb, a[1], b[1])


def pos_in_open_arc(poly: Polygon, start: PolyPos, end: PolyPos, q: PolyPos) -> bool:
    """Is q strictly inside the clockwise open arc from start to end?"""
    cs = poly_pos_cmp(poly, start, q)
    ce = poly_pos_cmp(poly, q, end)
    wrap = poly_pos_cmp(poly, start, end)
    if wrap < 0:
        return cs < 0 and ce < 0
    if wrap > 0:
        return cs < 0 or ce < 0
    return cs != 0  # full-circle arc: everything except the split point


@dataclass(frozen=True)
class ChainPiece:
    start: PolyPos
    end: PolyPos
    # symbolic x of the start corner: set when a wall's foot split the edge
    # there, placing the corner on the wall's sheared line
    start_rank: Optional[tuple] = None

    def interior_range(self, poly: Polygon) -> Tuple[int, int]:
        """(first, count) of polygon vertex indices strictly after start and
        not past end along the arc.  start == end means the full loop."""
        e0, p0 = self.start
        e1, p1 = self.end
        n = poly.n
        first = (e0 + 1) % n
        if self.start == self.end:
            return first, n - 1
        last = (e1 - 1) % n if p1 == poly.vertices[e1] else e1
        count = (last - e0) % n
        return first, count


@dataclass(frozen=True)
class SegPiece:
    a: tuple
    b: tuple
    # defining vertex of the sheared line for shear-vertical pieces
    # (subdivision walls); None for true segments
    rank: Optional[tuple] = None
    # symbolic x of the start corner when it differs from the corner itself
    start_rank: Optional[tuple] = None


class Region:
    """Simple clockwise region over a polygon.  ``pieces`` walk the boundary
    clockwise; consecutive pieces share their junction point implicitly."""

    def __init__(self, poly: Polygon, pieces: Sequence):
        self.poly = poly
        self.pieces = list(pieces)
        self._starts = []  # region vertex index where each piece starts
        self._meta: List[tuple] = []  # per piece: interior-range info
        count = 0
        for pc in self.pieces:
            self._starts.append(count)
            if isinstance(pc, ChainPiece):
                first, interior = pc.interior_range(poly)
                is_vert = pc.start[1] == poly.vertices[pc.start[0]]
                self._meta.append((first, interior, is_vert))
                count += 1 + interior
            else:
                self._meta.append(None)
                count += 1
        self.vcount = count

    # -- vertex access ----------------------------------------------------

    def vertex(self, k: int, run=None) -> tuple:
        return self.vertex_entry(k, run)[0]

    def vertex_entry(self, k: int, run=None) -> Tuple[tuple, Optional[int]]:
        """(point, polygon vertex index or None) of region corner k."""
        if run is not None:
            run.read()
        k %= self.vcount
        pi = bisect.bisect_right(self._starts, k) - 1
        off = k - self._starts[pi]
        pc = self.pieces[pi]
        if isinstance(pc, SegPiece):
            return (pc.a, None)
        first, interior, is_vert = self._meta[pi]
        if off == 0:
            idx = pc.start[0] if is_vert else None
            return (pc.start[1], idx)
        idx = (first + off - 1) % self.poly.n
        return (self.poly.vertices[idx], idx)

    def edge(self, k: int, run=None) -> Tuple[tuple, tuple]:
        a = self.vertex(k, run)
        b = self.vertex((k + 1) % self.vcount, run)
        return a, b

    def vertices(self, run=None) -> Iterator[tuple]:
        for k in range(self.vcount):
            yield self.vertex(k, run)

    def entries(self, run=None) -> Iterator[Tuple[tuple, Optional[int]]]:
        for k in range(self.vcount):
            yield self.vertex_entry(k, run)

    # -- piece bookkeeping --------------------------------------------------

    def piece_of_vertex(self, k: int) -> Tuple[int, int]:
        k %= self.vcount
        pi = bisect.bisect_right(self._starts, k) - 1
        return pi, k - self._starts[pi]

    def poly_pos_of_vertex(self, k: int) -> Optional[PolyPos]:
        """Polygon boundary position of region corner k when it lies on the
        polygon boundary (i.e. belongs to a chain piece)."""
        pi, off = self.piece_of_vertex(k)
        pc = self.pieces[pi]
        if isinstance(pc, SegPiece):
            return None
        if off == 0:
            return pc.start
        first, interior, _ = self._meta[pi]
        idx = (first + off - 1) % self.poly.n
        return (idx, self.poly.vertices[idx])

    def edge_rank(self, k: int) -> Optional[tuple]:
        """Sheared-line rank of region edge k (None unless the edge is a
        shear-vertical wall piece)."""
        pi, _ = self.piece_of_vertex(k % self.vcount)
        pc = self.pieces[pi]
        return pc.rank if isinstance(pc, SegPiece) else None

    def vertex_rank(self, k: int) -> Optional[tuple]:
        """Symbolic x of region corner k, when it differs from the corner's
        own coordinates (wall-foot split corners); else None."""
        pi, off = self.piece_of_vertex(k)
        if off != 0:
            return None
        return self.pieces[pi].start_rank

    # -- whole-boundary predicates ------------------------------------------

    def area2(self):
        pts = list(self.vertices())
        return -signed_area2(pts)  # positive for the clockwise orientation

    def contains(self, q, run=None) -> int:
        """+1 strictly inside, 0 on boundary, -1 outside."""
        q = tuple(q)
        m = self.vcount
        crossings = 0
        for k in range(m):
            a, b = self.edge(k, run)
            if a == b:
                continue
            if on_segment(q, a, b):
                return 0
            try:
                hit = ray_hit_segment(q, UP, a, b, rank=self.edge_rank(k),
                                      a_rank=self.vertex_rank(k),
                                      b_rank=self.vertex_rank((k + 1) % m))
            except ValueError:
                return 0
            if hit is not None:
                crossings += 1
        return 1 if crossings % 2 == 1 else -1


def whole_polygon(poly: Polygon) -> Region:
    """The full polygon as a one-piece (full-loop) region."""
    start = vertex_pos(poly, 0)
    return Region(poly, [ChainPiece(start, start)])
