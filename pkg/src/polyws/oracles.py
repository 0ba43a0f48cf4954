"""Unrestricted-memory reference implementations used as ground truth.

Nothing here touches a workspace ledger: oracles deliberately use Theta(n)
or worse space and are only ever run to check the budgeted algorithms.

Geodesic length comparisons are exact for every decision the oracles make:
sums of square roots are compared through interval refinement with integer
square roots (up to 160 digits).  In a simple polygon the shortest path
between two points is unique, so a genuine tie between competing path
lengths to the same node cannot occur; an undecided comparison at full
precision raises instead of guessing.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import (DOWN, UP, closer_hit, escapes_at_vertex, lex_cmp, on_segment,
                       orient, rat, ray_hit_segment, segments_properly_cross, sign,
                       vertical_dir_in_cone_cw)
from .polygon import Polygon


# ---------------------------------------------------------------------------
# foot points


@dataclass
class FootPoint:
    point: tuple
    edge: int  # index of the polygon edge containing the foot point
    is_self: bool


def oracle_foot_points(poly: Polygon, v: int) -> Tuple[FootPoint, FootPoint]:
    """(up, down) foot points of vertex v by brute force over all edges."""
    return (_oracle_foot(poly, v, UP), _oracle_foot(poly, v, DOWN))


def _oracle_foot(poly: Polygon, v: int, direction: int) -> FootPoint:
    n = poly.n
    origin = poly.vertices[v]
    prev_pt = poly.vertices[(v - 1) % n]
    next_pt = poly.vertices[(v + 1) % n]
    if escapes_at_vertex(prev_pt, origin, next_pt, direction):
        return FootPoint(origin, v, True)
    best = None
    for e in range(n):
        if e == v or (e + 1) % n == v:
            continue  # incident edges cannot be hit strictly beyond v
        a = poly.vertices[e]
        b = poly.vertices[(e + 1) % n]
        hit = ray_hit_segment(origin, direction, a, b, tag=e)
        if hit is not None:
            best = hit if best is None else closer_hit(best, hit, direction)
    if best is None:
        raise AssertionError("interior ray found no boundary hit")
    return FootPoint(best.point(origin[0]), best.tag, False)


def point_in_polygon(poly: Polygon, p) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside (exact)."""
    n = poly.n
    verts = poly.vertices
    for i in range(n):
        if on_segment(p, verts[i], verts[(i + 1) % n]):
            return 0
    crossings = 0
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        try:
            hit = ray_hit_segment(p, UP, a, b)
        except ValueError:
            return 0
        if hit is not None:
            crossings += 1
    return 1 if crossings % 2 == 1 else -1


# ---------------------------------------------------------------------------
# exact geodesic lengths


_PRECISIONS = (32, 80, 160)


class PathLength:
    """Sum of Euclidean lengths kept exactly as squared terms.

    Terms whose square root is rational accumulate into an exact rational
    part; the rest stay as surds compared through interval refinement.
    __lt__ treats exactly-equal values as not-less, which combined with the
    heap's index tie-break realizes the lexicographic tie rule.
    """

    __slots__ = ("terms", "exact", "surds", "_lo", "_hi", "_prec")

    def __init__(self, terms=()):
        self.terms = []
        self.exact = rat(0)
        self.surds = []
        self._lo = self._hi = None
        self._prec = 0
        for t in terms:
            self._add(t)

    def _add(self, sq) -> None:
        self.terms.append(sq)
        num, den = _as_ratio(sq)
        if num == 0:
            return
        r = isqrt(num * den)
        if r * r == num * den:  # sqrt(num/den) = r/den exactly
            self.exact += rat(r, den)
        else:
            self.surds.append((num, den))

    def plus(self, sq) -> "PathLength":
        out = PathLength(self.terms)
        out._add(sq)
        return out

    def _bounds(self, prec: int):
        """(lo, hi) integer bounds of the surd part scaled by 10**prec."""
        if self._prec == prec and self._lo is not None:
            return self._lo, self._hi
        scale = 10 ** prec
        lo = 0
        hi = 0
        for num, den in self.surds:
            r = isqrt(num * scale * scale // den)
            lo += r
            hi += r + 1
        self._lo, self._hi, self._prec = lo, hi, prec
        return lo, hi

    def cmp(self, other: "PathLength") -> int:
        diff = self.exact - other.exact  # rational; surds carry the rest
        if not self.surds and not other.surds:
            return sign(diff)
        for prec in _PRECISIONS:
            scale = 10 ** prec
            a_lo, a_hi = self._bounds(prec)
            b_lo, b_hi = other._bounds(prec)
            # compare a_surd - b_surd against -diff using exact rationals
            dn, dd = _as_ratio(diff)
            lo = (a_lo - b_hi) * dd + dn * scale
            hi = (a_hi - b_lo) * dd + dn * scale
            if hi < 0:
                return -1
            if lo > 0:
                return 1
        if diff == 0 and sorted(self.surds) == sorted(other.surds):
            return 0
        raise ArithmeticError("geodesic length comparison undecided at 160 digits")

    def __lt__(self, other):
        return self.cmp(other) < 0


def _as_ratio(v):
    if isinstance(v, int):
        return (v, 1)
    return (int(v.numerator), int(v.denominator))


def _sqdist(p, q):
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


# ---------------------------------------------------------------------------
# visibility


def vertex_sees(poly: Polygon, u_idx: Optional[int], u, v_idx: Optional[int], v) -> bool:
    """Is the open segment uv inside the closed polygon?

    u/v are points; u_idx/v_idx are their vertex indices when they are
    polygon vertices (None for interior points).
    """
    if u == v:
        return True
    n = poly.n
    verts = poly.vertices
    # local direction test at vertex endpoints: the segment must leave into
    # the closed interior cone
    for idx, frm, to in ((u_idx, u, v), (v_idx, v, u)):
        if idx is None:
            continue
        prev_pt = verts[(idx - 1) % n]
        next_pt = verts[(idx + 1) % n]
        d = (to[0] - frm[0], to[1] - frm[1])
        if not _dir_enters_closed_cone(prev_pt, frm, next_pt, d):
            return False
    # no proper crossing with any edge; touching at shared endpoints is fine
    for e in range(n):
        a, b = verts[e], verts[(e + 1) % n]
        if segments_properly_cross(u, v, a, b):
            return False
        # a vertex strictly inside the open segment blocks minimality
        if a != u and a != v and on_segment(a, u, v):
            return False
        # segment overlapping an edge collinearly is fine (runs along the
        # boundary) unless the edge pokes through; both covered above
    # interior points: ensure the midpoint is inside (segment not outside)
    if u_idx is None or v_idx is None or not _adjacent(poly, u_idx, v_idx):
        mid = (rat(u[0] + v[0], 2), rat(u[1] + v[1], 2))
        if point_in_polygon(poly, mid) < 0:
            return False
    return True


def _adjacent(poly: Polygon, i: int, j: int) -> bool:
    return (i - j) % poly.n in (1, poly.n - 1)


def _dir_enters_closed_cone(prev_pt, v, next_pt, d) -> bool:
    """Direction d from vertex v points into the closed interior cone."""
    s = (next_pt[0] - v[0], next_pt[1] - v[1])
    e = (prev_pt[0] - v[0], prev_pt[1] - v[1])
    from .geometry import vcross, dot

    if vcross(s, d) == 0 and dot(s, d) > 0:
        return True  # along the outgoing edge
    if vcross(e, d) == 0 and dot(e, d) > 0:
        return True  # along the incoming edge
    cs = vcross(e, s)
    c1 = sign(vcross(e, d))
    c2 = sign(vcross(d, s))
    if cs > 0:
        return c1 > 0 and c2 > 0
    if cs < 0:
        return c1 > 0 or c2 > 0
    if dot(e, s) < 0:
        return c1 > 0
    return False


# ---------------------------------------------------------------------------
# shortest paths / SPT


class VisibilityGraph:
    """Vertices of P plus optional extra interior points, with exact-length
    mutual-visibility arcs.  Construction is Theta(n^3); oracle only."""

    def __init__(self, poly: Polygon, extras: Sequence[tuple] = ()):
        self.poly = poly
        self.nodes: List[tuple] = list(poly.vertices) + [tuple(p) for p in extras]
        self.vis: List[List[int]] = [[] for _ in self.nodes]
        n = poly.n
        for i in range(len(self.nodes)):
            ii = i if i < n else None
            for j in range(i + 1, len(self.nodes)):
                jj = j if j < n else None
                if vertex_sees(poly, ii, self.nodes[i], jj, self.nodes[j]):
                    self.vis[i].append(j)
                    self.vis[j].append(i)

    def dijkstra(self, src: int) -> Tuple[list, list]:
        """Exact Dijkstra; returns (dist PathLength|None list, parent list)."""
        nn = len(self.nodes)
        dist: List[Optional[PathLength]] = [None] * nn
        parent = [-1] * nn
        done = [False] * nn
        dist[src] = PathLength()
        heap = [(PathLength(), src)]
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for v in self.vis[u]:
                if done[v]:
                    continue
                nd = d.plus(_sqdist(self.nodes[u], self.nodes[v]))
                cur = dist[v]
                take = False
                if cur is None:
                    take = True
                else:
                    c = nd.cmp(cur)
                    # exact ties broken toward the smaller parent index
                    take = c < 0 or (c == 0 and u < parent[v])
                if take:
                    dist[v] = nd
                    parent[v] = u
                    heapq.heappush(heap, (nd, v))
        return dist, parent


def _collapse_collinear(points: List[tuple]) -> List[tuple]:
    out = []
    for p in points:
        while len(out) >= 2 and orient(out[-2], out[-1], p) == 0:
            out.pop()
        if not out or out[-1] != p:
            out.append(p)
    return out


def oracle_shortest_path(poly: Polygon, p, q) -> List[tuple]:
    """Geodesic from p to q as its minimal vertex sequence (interior vertices
    are strict turns)."""
    p = tuple(p)
    q = tuple(q)
    if point_in_polygon(poly, p) < 0 or point_in_polygon(poly, q) < 0:
        raise ValueError("endpoint outside the polygon")
    if p == q:
        return [p]
    pi = poly.vertices.index(p) if p in poly.vertices else None
    qi = poly.vertices.index(q) if q in poly.vertices else None
    if vertex_sees(poly, pi, p, qi, q):
        return [p, q]
    extras = [pt for pt, idx in ((p, pi), (q, qi)) if idx is None]
    vg = VisibilityGraph(poly, extras)
    src = pi if pi is not None else poly.n + extras.index(p)
    dst = qi if qi is not None else poly.n + extras.index(q)
    dist, parent = vg.dijkstra(src)
    if dist[dst] is None:
        raise AssertionError("no geodesic found; polygon not simple?")
    seq = []
    at = dst
    while at != -1:
        seq.append(vg.nodes[at])
        at = parent[at]
    seq.reverse()
    return _collapse_collinear(seq)


def oracle_spt(poly: Polygon, p) -> Dict[str, set]:
    """Shortest path tree rooted at p: union of pi(p, v) over all vertices.

    Returns {"vertex_edges": {(i, j) i<j}, "root_edges": {vertex_index}} where
    root edges join p to a vertex when p is not itself a vertex.
    """
    p = tuple(p)
    pi = poly.vertices.index(p) if p in poly.vertices else None
    extras = [] if pi is not None else [p]
    vg = VisibilityGraph(poly, extras)
    src = pi if pi is not None else poly.n
    dist, parent = vg.dijkstra(src)
    vertex_edges = set()
    root_edges = set()
    n = poly.n
    for v in range(n):
        if v == src:
            continue
        if dist[v] is None:
            raise AssertionError("disconnected SPT; polygon not simple?")
        # walk up, collapsing collinear runs so edges are strict turns
        chain = []
        at = v
        while at != -1:
            chain.append(at)
            at = parent[at]
        pts = [vg.nodes[i] for i in chain]
        pts_min = _collapse_collinear(pts)
        idx_of = {}
        for i in chain:
            idx_of.setdefault(vg.nodes[i], i)
        for a, b in zip(pts_min, pts_min[1:]):
            ia, ib = idx_of[a], idx_of[b]
            if ia == src and pi is None:
                root_edges.add(ib)
            elif ib == src and pi is None:
                root_edges.add(ia)
            else:
                vertex_edges.add((min(ia, ib), max(ia, ib)))
    return {"vertex_edges": vertex_edges, "root_edges": root_edges}


# ---------------------------------------------------------------------------
# triangulation validity


def oracle_triangulation_valid(poly: Polygon, diagonals: Sequence[Tuple[int, int]],
                               expect_count: bool = True) -> Optional[str]:
    """Check a vertices-only triangulation given as vertex-index diagonals.

    Returns None when valid, else a human-readable description of the first
    violation: duplicates, boundary edges emitted as diagonals, crossings,
    containment failures, wrong count, or bad area coverage.
    """
    n = poly.n
    verts = poly.vertices
    seen = set()
    for (i, j) in diagonals:
        key = (min(i, j), max(i, j))
        if key in seen:
            return f"duplicate diagonal {key}"
        seen.add(key)
        if i == j:
            return f"degenerate diagonal {key}"
        if _adjacent(poly, i, j):
            return f"boundary edge emitted as diagonal {key}"
        if not vertex_sees(poly, i, verts[i], j, verts[j]):
            return f"diagonal {key} leaves the polygon"
    dl = list(seen)
    for a in range(len(dl)):
        for b in range(a + 1, len(dl)):
            (i, j), (k, l) = dl[a], dl[b]
            if segments_properly_cross(verts[i], verts[j], verts[k], verts[l]):
                return f"diagonals {dl[a]} and {dl[b]} cross"
    if expect_count and len(dl) != n - 3:
        return f"expected {n - 3} diagonals, got {len(dl)}"
    if expect_count:
        tris = triangles_from_diagonals(poly, dl)
        if tris is None:
            return "edge set does not decompose into triangles"
        if len(tris) != n - 2:
            return f"expected {n - 2} triangles, got {len(tris)}"
        area = 0
        for (a, b, c) in tris:
            t2 = (
                (verts[b][0] - verts[a][0]) * (verts[c][1] - verts[a][1])
                - (verts[b][1] - verts[a][1]) * (verts[c][0] - verts[a][0])
            )
            if t2 <= 0:
                return f"triangle {(a, b, c)} has non-positive area"
            area += t2
        if area != poly.area2():
            return f"triangle area sum {area} != polygon area {poly.area2()}"
    return None


def triangles_from_diagonals(poly: Polygon, diagonals) -> Optional[List[Tuple[int, int, int]]]:
    """Reconstruct interior faces from boundary + diagonals by angular face
    walking; returns None unless every interior face is a triangle."""
    n = poly.n
    verts = poly.vertices
    adj: List[List[int]] = [[] for _ in range(n)]
    edges = set()
    for i in range(n):
        j = (i + 1) % n
        edges.add((i, j))
        edges.add((j, i))
        adj[i].append(j)
        adj[j].append(i)
    for (i, j) in diagonals:
        edges.add((i, j))
        edges.add((j, i))
        adj[i].append(j)
        adj[j].append(i)

    import functools

    def angle_cmp(origin):
        ox, oy = verts[origin]

        def cmp(a, b):
            ax, ay = verts[a][0] - ox, verts[a][1] - oy
            bx, by = verts[b][0] - ox, verts[b][1] - oy
            ha = 0 if (ay > 0 or (ay == 0 and ax > 0)) else 1
            hb = 0 if (by > 0 or (by == 0 and bx > 0)) else 1
            if ha != hb:
                return -1 if ha < hb else 1
            c = ax * by - ay * bx
            return -1 if c > 0 else (1 if c < 0 else 0)

        return functools.cmp_to_key(cmp)

    for i in range(n):
        adj[i].sort(key=angle_cmp(i))
    # next edge in face walk: arrive i->j, leave j->k where k is the cw
    # predecessor of i around j; every face is then traced with its interior
    # on the left, so interior faces come out counterclockwise
    nxt = {}
    for j in range(n):
        ring = adj[j]
        pos = {k: t for t, k in enumerate(ring)}
        for i in ring:
            k = ring[(pos[i] - 1) % len(ring)]
            nxt[(i, j)] = (j, k)
    faces = []
    visited = set()
    for start in edges:
        if start in visited:
            continue
        face = []
        cur = start
        while True:
            visited.add(cur)
            face.append(cur[0])
            cur = nxt[cur]
            if cur == start:
                break
            if len(face) > 4 * n:
                return None
        faces.append(face)
    tris = []
    outer_found = False
    for face in faces:
        if len(face) == 3:
            a, b, c = face
            s2 = (
                (verts[b][0] - verts[a][0]) * (verts[c][1] - verts[a][1])
                - (verts[b][1] - verts[a][1]) * (verts[c][0] - verts[a][0])
            )
            if s2 > 0:  # interior faces are traced counterclockwise
                tris.append(tuple(face))
                continue
        if not outer_found and len(face) >= 3:
            outer_found = True
            continue
        return None
    return tris
