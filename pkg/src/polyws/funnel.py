"""Geodesics inside regions: the funnel engine.

One primitive drives everything: extending a funnel by a single visible
point.  Two-point paths walk the cells of a balanced subdivision, splicing
each cell's boundary-to-boundary geodesic into the funnel one vertex at a
time; small regions are solved in memory by ear clipping and the classic
triangle-sleeve walk; large cells recurse through their own subdivision.

Path points are (point, polygon-vertex-index-or-None, sym) triples where
``sym`` is the shear's symbolic x-offset (rank_y - y, nonzero only for
points on subdivision walls).  All orientation decisions go through the
two-level symbolic test, which is what keeps exactly-stacked verticals
(walls hugging vertical edges, zero-width slivers) consistent.
"""

from __future__ import annotations

from typing import Callable, Iterable, List, Optional, Tuple

from .geometry import on_segment, orient, orient_sym
from .memory import BudgetedRun, Words, WordDeque
from .region import Region
from .subdivision import BalancedSubdivision, build_subdivision

PathPt = Tuple[tuple, Optional[int], object]  # (point, vertex index, sym offset)

BASE_FACTOR = 8      # regions up to BASE_FACTOR * s corners are solved in memory
BASE_MIN = 24


def ppt(point, idx=None, sym=0) -> PathPt:
    return (tuple(point), idx, sym)


def _ort(a: PathPt, b: PathPt, c: PathPt) -> int:
    return orient_sym(a[0], a[2], b[0], b[2], c[0], c[2])


class PathEmitter:
    """Collects a path with minimal vertex sequences: consecutive duplicates
    and collinear pass-through points are dropped on the fly."""

    def __init__(self, out: Callable[[PathPt], None]):
        self.out = out
        self._tail: List[PathPt] = []  # last two pending points

    def emit(self, p: PathPt) -> None:
        t = self._tail
        if t and t[-1][0] == p[0]:
            return
        if len(t) == 2 and orient(t[0][0], t[1][0], p[0]) == 0:
            t[1] = p  # middle of a straight run: replace, do not emit yet
            return
        if len(t) == 2:
            self.out(t[0])
            t[0] = t[1]
            t[1] = p
        else:
            t.append(p)

    def finish(self) -> None:
        for p in self._tail:
            self.out(p)
        self._tail.clear()


class Funnel:
    """Apex plus two concave chains; the path to the left frontier is always
    emitted-prefix + apex + left chain."""

    def __init__(self, run: BudgetedRun, apex: PathPt, emitter: PathEmitter):
        self.run = run
        self.apex = apex
        self.left = WordDeque(run, cost=3)
        self.right = WordDeque(run, cost=3)
        self.emitter = emitter

    def frontier(self, side: int) -> PathPt:
        chain = self.left if side > 0 else self.right
        return chain[-1] if len(chain) else self.apex

    def extend(self, side: int, w: PathPt) -> None:
        """Classic single-point funnel extension on one side.

        ``side`` +1 = left chain (interior turns are left turns in the
        clockwise cell layout), -1 = right chain.
        """
        chain = self.left if side > 0 else self.right
        other = self.right if side > 0 else self.left
        if len(chain) and chain[-1][0] == w[0]:
            return
        while len(chain):
            v = chain[-1]
            u = chain[-2] if len(chain) >= 2 else self.apex
            if _ort(u, v, w) == side:
                break  # v is a genuine wrap on this side
            chain.pop()
        if not len(chain):
            # the new segment leaves the apex: the apex may advance into the
            # other chain, emitting confirmed path vertices
            while len(other):
                if _ort(self.apex, other[0], w) == side:
                    break  # w stays within the wedge
                self.emitter.emit(self.apex)
                self.apex = other.popleft()
        chain.append(w)

    def splice(self, side: int, stream: Iterable[PathPt]) -> None:
        """Extend one side by a geodesic stream whose first point equals the
        current frontier endpoint of that side."""
        it = iter(stream)
        try:
            first = next(it)
        except StopIteration:
            return
        cur = self.frontier(side)[0]
        if first[0] != cur:
            raise AssertionError(f"splice stream starts at {first[0]}, frontier {cur}")
        for w in it:
            self.extend(side, w)

    def close_left(self) -> None:
        """Emit the remaining path to the left frontier (apex + left chain)."""
        self.emitter.emit(self.apex)
        while len(self.left):
            self.emitter.emit(self.left.popleft())
        while len(self.right):
            self.right.pop()
        self.emitter.finish()

    def release(self) -> None:
        self.left.clear()
        self.right.clear()


# ---------------------------------------------------------------------------
# in-memory base case: ear clipping + triangle sleeve


def _earclip(pts: List[PathPt]) -> List[Tuple[int, int, int]]:
    """Triangulate a clockwise simple cycle of path points (symbolic
    orientation).  O(m^2).

    Exactly-straight corners are removed once up front; corners may become
    straight again as ears are clipped, but such corners are simply never
    ears (dropping them mid-flight would desynchronize the dual adjacency
    across the collinear diagonal)."""
    m = len(pts)
    active = list(range(m))
    # initial pass: drop straight corners until stable
    changed = True
    while changed and len(active) > 3:
        changed = False
        k = len(active)
        for j in range(k):
            a, b, c = active[j - 1], active[j], active[(j + 1) % k]
            if _ort(pts[a], pts[b], pts[c]) == 0:
                active.pop(j)
                changed = True
                break
    tris: List[Tuple[int, int, int]] = []
    guard = 0
    while len(active) > 3:
        guard += 1
        if guard > 4 * m * m:
            raise AssertionError("ear clipping failed to make progress")
        clipped = False
        k = len(active)
        for j in range(k):
            a, b, c = active[j - 1], active[j], active[(j + 1) % k]
            if _ort(pts[a], pts[b], pts[c]) != -1:
                continue  # need a convex corner of the clockwise cycle
            if _ear_blocked(pts, active, a, b, c):
                continue
            tris.append((a, b, c))
            active.pop(j)
            clipped = True
            break
        if not clipped:
            raise AssertionError("no ear found; region not simple?")
    if len(active) == 3:
        a, b, c = active
        if _ort(pts[a], pts[b], pts[c]) == -1:
            tris.append((a, b, c))
    return tris


def _ear_blocked(pts, active, a, b, c) -> bool:
    pa, pb, pc = pts[a], pts[b], pts[c]
    for i in active:
        if i in (a, b, c):
            continue
        p = pts[i]
        d1 = _ort(pa, pb, p)
        d2 = _ort(pb, pc, p)
        d3 = _ort(pc, pa, p)
        # inside or on the clockwise triangle
        if d1 <= 0 and d2 <= 0 and d3 <= 0:
            return True
    return False


def _in_tri(p: PathPt, a: PathPt, b: PathPt, c: PathPt) -> bool:
    return (_ort(a, b, p) <= 0 and _ort(b, c, p) <= 0 and _ort(c, a, p) <= 0)


def inmemory_geodesic(region: Region, a: PathPt, b: PathPt,
                      run: BudgetedRun) -> List[PathPt]:
    """Geodesic between two points of a small region, fully in memory.

    Charges O(m) words transiently (m = region corners); intended for
    regions of complexity O(s)."""
    m = region.vcount
    entries = Words(run, cost=3)
    for k in range(m):
        pt, idx = region.vertex_entry(k, run)
        rank = region.vertex_rank(k)
        sym = (rank[1] - pt[1]) if rank is not None else 0
        e = (pt, idx, sym)
        if len(entries) and entries[len(entries) - 1][0] == pt and \
                entries[len(entries) - 1][2] == sym:
            continue
        entries.append(e)
    try:
        if a[0] == b[0]:
            return [a]
        pts = [entries[i] for i in range(len(entries))]
        if len(pts) >= 2 and pts[0][0] == pts[-1][0] and pts[0][2] == pts[-1][2]:
            pts.pop()
        if len(pts) < 3:
            return [a, b]
        with run.alloc(3 * len(pts)):
            tris = _earclip(pts)
            path = _sleeve_path(pts, tris, a, b)
        path[0] = a
        path[-1] = b
        return path
    finally:
        entries.clear()


def _sleeve_path(pts: List[PathPt], tris, a: PathPt, b: PathPt) -> List[PathPt]:
    """Funnel walk over the triangle sleeve from a to b."""
    edge_tris = {}
    for t, (i, j, k) in enumerate(tris):
        for u, v in ((i, j), (j, k), (k, i)):
            key = (min(u, v), max(u, v))
            edge_tris.setdefault(key, []).append(t)
    ta = _find_triangle(pts, tris, a)
    tb = _find_triangle(pts, tris, b)
    if ta is None or tb is None:
        raise AssertionError("endpoint not inside the region")
    from collections import deque

    parent = {ta: (None, None)}
    dq = deque([ta])
    while dq:
        t = dq.popleft()
        if t == tb:
            break
        i, j, k = tris[t]
        for u, v in ((i, j), (j, k), (k, i)):
            key = (min(u, v), max(u, v))
            for t2 in edge_tris[key]:
                if t2 != t and t2 not in parent:
                    parent[t2] = (t, key)
                    dq.append(t2)
    if tb not in parent:
        raise AssertionError("disconnected sleeve")
    portals = []
    t = tb
    while parent[t][0] is not None:
        t, key = parent[t]
        portals.append(key)
    portals.reverse()
    # portals through an endpoint are crossed for free and carry no
    # constraint; drop them from both ends
    while portals and on_segment(a[0], pts[portals[0][0]][0], pts[portals[0][1]][0]):
        portals.pop(0)
    while portals and on_segment(b[0], pts[portals[-1][0]][0], pts[portals[-1][1]][0]):
        portals.pop()

    out: List[PathPt] = []
    emitter = PathEmitter(out.append)

    class _Scratch:  # the caller already allocated O(m) for this walk
        def charge(self, *_):
            pass

        def release(self, *_):
            pass

    fun = Funnel(_Scratch(), a, emitter)
    prev_left = prev_right = None
    for (u, v) in portals:
        pu, pv = pts[u], pts[v]
        if prev_left is None:
            # left endpoint sits clockwise of the right one seen from a
            if _ort(a, pu, pv) < 0:
                left, right = (pu, u), (pv, v)
            else:
                left, right = (pv, v), (pu, u)
            fun.extend(1, left[0])
            fun.extend(-1, right[0])
        else:
            if u in (prev_left[1], prev_right[1]):
                keep, new = u, v
            else:
                keep, new = v, u
            side = -1 if keep == prev_left[1] else 1
            fun.extend(side, pts[new])
            if side > 0:
                left, right = (pts[new], new), prev_right
            else:
                left, right = prev_left, (pts[new], new)
        prev_left, prev_right = left, right
    fun.extend(1, b)
    fun.close_left()
    return out


def _find_triangle(pts, tris, q: PathPt) -> Optional[int]:
    for t, (i, j, k) in enumerate(tris):
        if _in_tri(q, pts[i], pts[j], pts[k]):
            return t
    return None


# ---------------------------------------------------------------------------
# region geodesics


def geodesic_region(region: Region, a: PathPt, b: PathPt, s: int,
                    run: BudgetedRun,
                    sub: Optional[BalancedSubdivision] = None) -> List[PathPt]:
    """Geodesic between two points of a simple region under O(s) workspace.

    Small regions are solved in memory; larger ones are cut by their own
    balanced subdivision and walked cell by cell with a funnel.  Returns the
    minimal vertex sequence (polygon indices attached where applicable).
    """
    if a[0] == b[0]:
        return [a]
    m = region.vcount
    if sub is None and m <= max(BASE_FACTOR * s, BASE_MIN):
        return inmemory_geodesic(region, a, b, run)
    own_sub = False
    if sub is None:
        sub = build_subdivision(region, s, run)
        own_sub = True
    try:
        return _walk_cells(region, sub, a, b, s, run)
    finally:
        if own_sub:
            release_subdivision(sub)


def release_subdivision(sub: BalancedSubdivision) -> None:
    sub.walls.clear()
    sub.nodes.clear()
    sub._cells.clear()
    sub._ext_vertices.clear()
    sub._node_of_wall.clear()
    sub._cell_of_item.clear()
    sub._ext_vertex_set.clear()


def _walk_cells(region: Region, sub: BalancedSubdivision, a: PathPt, b: PathPt,
                s: int, run: BudgetedRun) -> List[PathPt]:
    cid_a = sub.locate(a[0], run)
    cid_b = sub.locate(b[0], run)
    if cid_a == cid_b:
        reg = sub.cell_region(cid_a)
        with run.alloc(len(reg.pieces)):
            return _cell_geodesic(reg, a, b, s, run)

    # wall tree path from a's cell to b's cell
    from collections import deque

    parent = {cid_a: (None, None)}
    dq = deque([cid_a])
    with run.alloc(2 * sub.cell_count):
        while dq:
            c = dq.popleft()
            if c == cid_b:
                break
            for w in sub.walls:
                cv, cf = sub.wall_cells(w.wid)
                for c1, c2 in ((cv, cf), (cf, cv)):
                    if c1 == c and c2 not in parent:
                        parent[c2] = (c, w.wid)
                        dq.append(c2)
        path = []
        c = cid_b
        while parent[c][0] is not None:
            c, wid = parent[c]
            path.append(wid)
        path.reverse()

    out: List[PathPt] = []
    emitter = PathEmitter(out.append)
    fun = Funnel(run, a, emitter)
    cur_cell = cid_a
    try:
        for wid in path:
            _splice_cell(region, sub, fun, cur_cell, wid, s, run)
            cur_cell = _other_cell(sub, wid, cur_cell)
        reg = sub.cell_region(cur_cell)
        with run.alloc(len(reg.pieces)):
            gl = fun.frontier(1)
            stream = _cell_geodesic(reg, gl, b, s, run)
        fun.splice(1, stream)
        fun.close_left()
    finally:
        fun.release()
    return out


def _other_cell(sub: BalancedSubdivision, wid: int, cid: int) -> int:
    cv, cf = sub.wall_cells(wid)
    return cf if cid == cv else cv


def _splice_cell(region: Region, sub: BalancedSubdivision, fun: Funnel,
                 cid: int, exit_wid: int, s: int, run: BudgetedRun) -> None:
    """Extend the funnel across one cell toward the exit wall.

    The exit wall is traversed Z -> W in the cell's clockwise item cycle;
    boundary sides pair the entry traversal's far end with Z and its near
    end with W.  For the first cell (point funnel) the wedge is oriented so
    the left ray sits clockwise of the right one."""
    exit_z, exit_w = _exit_traversal(sub, cid, exit_wid)
    reg = sub.cell_region(cid)
    with run.alloc(len(reg.pieces)):
        gl = fun.frontier(1)
        gr = fun.frontier(-1)
        if gl[0] == gr[0]:  # point funnel: orient the wedge
            if _ort(gl, exit_w, exit_z) < 0:
                left_target, right_target = exit_w, exit_z
            else:
                left_target, right_target = exit_z, exit_w
        else:
            entry_far = _entry_far_end(sub, cid, gl, gr)
            if entry_far is not None and gl[0] == entry_far:
                left_target, right_target = exit_z, exit_w
            else:
                left_target, right_target = exit_w, exit_z
        fun.splice(1, _cell_geodesic(reg, gl, left_target, s, run))
        fun.splice(-1, _cell_geodesic(reg, gr, right_target, s, run))


def _wall_pathpts(sub: BalancedSubdivision, wid: int) -> Tuple[PathPt, PathPt]:
    """(vertex-end, foot-end) of a wall as path points with symbolic offsets."""
    w = sub.walls[wid]
    v_idx = sub.region.vertex_entry(w.vertex_k)[1]
    v_sym = w.line_rank[1] - w.vpt[1]
    f_sym = w.line_rank[1] - w.fpt[1]
    return ((w.vpt, v_idx, v_sym), (w.fpt, None, f_sym))


def _exit_traversal(sub: BalancedSubdivision, cid: int, exit_wid: int):
    """(Z, W): the exit wall's endpoints in the order this cell's clockwise
    cycle traverses them."""
    v_end, f_end = _wall_pathpts(sub, exit_wid)
    for item in sub.cell_items(cid):
        if item[0] == "wall" and item[1] == exit_wid:
            return (v_end, f_end) if item[2] == "v" else (f_end, v_end)
    raise AssertionError("exit wall not on the cell boundary")


def _entry_far_end(sub: BalancedSubdivision, cid: int, gl: PathPt, gr: PathPt):
    """The far (second-traversed) endpoint of the wall the funnel frontiers
    currently sit on, in this cell's cycle; None if not identifiable."""
    pts = {gl[0], gr[0]}
    for item in sub.cell_items(cid):
        if item[0] != "wall":
            continue
        w = sub.walls[item[1]]
        if {w.vpt, w.fpt} == pts:
            first, second = (w.vpt, w.fpt) if item[2] == "v" else (w.fpt, w.vpt)
            return second
    return None


def _cell_geodesic(reg: Region, a: PathPt, b: PathPt, s: int,
                   run: BudgetedRun) -> List[PathPt]:
    return geodesic_region(reg, a, b, s, run)
