"""Balanced subdivision of a simple region by vertical extensions.

Three steps: extensions from every Delta-th boundary vertex (partition
vertices), extensions from up to four extreme vertices per partition chain,
and triple-separating extensions inside any cell that still carries three or
more extensions on its boundary.  The result is O(min{m/s, s}) extensions
cutting the region into as many cells of complexity O(max{m/s, s}).

The subdivision is stored as walls plus their boundary marks in clockwise
order; cells stay implicit and are materialized on demand as Regions (O(1)
words per boundary piece), which is what keeps the structure within O(s)
workspace.

A vertical extension is kept as up to two *walls* (vertex-to-foot segments);
the walls of one defining vertex share an extension id and count as a single
extension wherever the construction groups them.  Fully degenerate
extensions (both feet equal to the vertex) cut nothing and are dropped.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .footpoints import VertexFeet, all_foot_points, chain_foot_points
from .geometry import DOWN, UP, lex_cmp, on_segment, seg_param_cmp
from .memory import BudgetedRun, Words
from .region import ChainPiece, Region, SegPiece, canonical_pos

STEP_PARTITION = 1
STEP_EXTREME = 2
STEP_THIRD = 3


def choose_delta(m: int, s: int) -> int:
    """Chunk parameter: ceil(m/s) when s <= sqrt(m), else s, clamped into the
    legal range (degenerate tiny inputs fall back toward m)."""
    if not (1 <= s <= m):
        raise ValueError("need 1 <= s <= m")
    if s * s <= m:
        delta = -(-m // s)
    else:
        delta = s
    lower = max(-(-m // s), -(-(s * m.bit_length()) // m))
    delta = max(delta, lower)
    return min(delta, m)


@dataclass
class Wall:
    wid: int
    ext_id: tuple           # (defining vertex index, step)
    vertex_k: int           # region vertex index of the defining vertex
    vpt: tuple
    fpt: tuple
    foot_edge: int          # region edge index carrying the foot point
    direction: int          # UP or DOWN from the vertex
    step: int
    line_rank: tuple = None  # symbolic x of the wall's sheared line


class BalancedSubdivision:
    """Walls + clockwise boundary marks + implicit cells of one region."""

    def __init__(self, region: Region, run: BudgetedRun, delta: int):
        self.region = region
        self.run = run
        self.delta = delta
        self.walls: Words = Words(run, cost=8)
        # nodes: (edge, point, rank, [(wid, end), ...]) sorted clockwise
        self.nodes: Words = Words(run, cost=5)
        self._node_of_wall: Dict[Tuple[int, str], int] = {}
        self._cells: Words = Words(run, cost=1)      # representative items
        self._cell_of_item: Dict[tuple, int] = {}    # O(#walls + #nodes)
        self._ext_vertices: Words = Words(run, cost=1)
        self._ext_vertex_set: set = set()

    def add_extension(self, vf: VertexFeet, step: int) -> bool:
        """Register one extension; a vertex contributes at most once (the
        same vertex can qualify in several construction roles but defines a
        single chord)."""
        if vf.up is None and vf.down is None:
            return False
        if vf.vertex in self._ext_vertex_set:
            return False
        self._ext_vertex_set.add(vf.vertex)
        self._ext_vertices.append(vf.vertex)
        ext_id = (vf.vertex, step)
        line_rank = self.region.vertex_rank(vf.vertex) or vf.point
        for direction, foot in ((UP, vf.up), (DOWN, vf.down)):
            if foot is None:
                continue
            wid = len(self.walls)
            self.walls.append(Wall(
                wid=wid, ext_id=ext_id, vertex_k=vf.vertex, vpt=vf.point,
                fpt=foot[0], foot_edge=foot[1], direction=direction, step=step,
                line_rank=line_rank))
        return True

    @property
    def extension_count(self) -> int:
        return len({w.ext_id for w in self.walls})

    # ------------------------------------------------------------------
    # marks and nodes

    def _mark_cmp(self, a, b) -> int:
        """Clockwise order of marks (edge, point, rank); coincident points
        tie-break by the sheared-line order along the edge direction."""
        if a[0] != b[0]:
            return -1 if a[0] < b[0] else 1
        ea = self.region.vertex(a[0])
        eb = self.region.vertex(a[0] + 1)
        c = seg_param_cmp(ea, eb, a[1], b[1])
        if c != 0:
            return c
        r = lex_cmp(a[2], b[2])
        if r == 0:
            return 0
        return r if lex_cmp(ea, eb) < 0 else -r

    def rebuild(self) -> None:
        """(Re)compute nodes and cells from the current wall set."""
        marks = []
        for w in self.walls:
            marks.append((w.vertex_k, w.vpt, w.line_rank, w.wid, "v"))
            # foot marks keep the edge the sheared ray actually crossed: a
            # foot whose coordinates equal the edge's far vertex still sits
            # symbolically strictly inside that edge
            marks.append((w.foot_edge, w.fpt, w.line_rank, w.wid, "f"))
        marks.sort(key=functools.cmp_to_key(
            lambda x, y: self._mark_cmp(x[:3], y[:3])))
        self.nodes.clear()
        self._node_of_wall.clear()
        i = 0
        while i < len(marks):
            j = i
            group = []
            while j < len(marks) and self._mark_cmp(marks[i][:3], marks[j][:3]) == 0:
                group.append((marks[j][3], marks[j][4]))
                j += 1
            node_id = len(self.nodes)
            self.nodes.append((marks[i][0], marks[i][1], marks[i][2], group))
            for wid, end in group:
                self._node_of_wall[(wid, end)] = node_id
            i = j
        self._enumerate_cells()

    # ------------------------------------------------------------------
    # face walking

    def _germ(self, wid: int, end: str) -> tuple:
        """Direction of wall ``wid`` leaving its ``end`` node (symbolic: the
        vertical germs carry the infinitesimal CCW rotation of the shear)."""
        w = self.walls[wid]
        up = (w.direction == UP) == (end == "v")
        return ((0, 1), 1) if up else ((0, -1), 1)

    def _arc_out_dir(self, node_id: int) -> tuple:
        edge, _, _, _ = self.nodes[node_id]
        a = self.region.vertex(edge)
        b = self.region.vertex(edge + 1)
        return ((b[0] - a[0], b[1] - a[1]), 0)

    def _arc_in_dir(self, node_id: int) -> tuple:
        edge, point, _, _ = self.nodes[node_id]
        a = self.region.vertex(edge)
        if point == a:  # node at a region corner: arrive along the previous edge
            prev = self.region.vertex(edge - 1)
            return ((a[0] - prev[0], a[1] - prev[1]), 0)
        return self._arc_out_dir(node_id)

    def _leave(self, node_id: int, travel_dir: tuple) -> tuple:
        """Face rule: having arrived at the node travelling in ``travel_dir``,
        leave via the strict ccw-successor of the reversed travel direction
        among the node's outgoing items (interior stays on the right)."""
        (vec, eps) = travel_dir
        d0 = ((-vec[0], -vec[1]), eps)
        best = None
        candidates = [(self._arc_out_dir(node_id), ("arc", node_id))]
        for wid, end in self.nodes[node_id][3]:
            candidates.append((self._germ(wid, end), ("wall", wid, end)))
        for direction, item in candidates:
            if _dir_cmp(direction, d0) == 0:
                continue
            if best is None or _ccw_closer(d0, direction, best[0]):
                best = (direction, item)
        if best is None:
            raise AssertionError("face walk found no exit item")
        return best[1]

    def _next_item(self, item: tuple) -> tuple:
        if item[0] == "arc":
            node_id = (item[1] + 1) % len(self.nodes)
            return self._leave(node_id, self._arc_in_dir(node_id))
        _, wid, end = item
        other = "f" if end == "v" else "v"
        node_id = self._node_of_wall[(wid, other)]
        germ_back = self._germ(wid, other)
        travel = ((-germ_back[0][0], -germ_back[0][1]), germ_back[1])
        return self._leave(node_id, travel)

    # ------------------------------------------------------------------
    # cells

    def _enumerate_cells(self) -> None:
        self._cells.clear()
        self._cell_of_item.clear()
        if not self.nodes:
            self._cells.append(None)  # the whole region, uncut
            return
        items = [("arc", i) for i in range(len(self.nodes))]
        for w in self.walls:
            items.append(("wall", w.wid, "v"))
            items.append(("wall", w.wid, "f"))
        for start in items:
            if start in self._cell_of_item:
                continue
            cid = len(self._cells)
            self._cells.append(start)
            cur = start
            while True:
                self._cell_of_item[cur] = cid
                cur = self._next_item(cur)
                if cur == start:
                    break

    @property
    def cell_count(self) -> int:
        return len(self._cells)

    def cell_items(self, cid: int) -> Iterator[tuple]:
        start = self._cells[cid]
        if start is None:
            return
        cur = start
        while True:
            yield cur
            cur = self._next_item(cur)
            if cur == start:
                break

    def cell_of_item(self, item: tuple) -> int:
        return self._cell_of_item[item]

    def wall_cells(self, wid: int) -> Tuple[int, int]:
        """(cell entered from the vertex end, cell entered from the foot end)."""
        return (self._cell_of_item[("wall", wid, "v")],
                self._cell_of_item[("wall", wid, "f")])

    def cell_region(self, cid: int) -> Region:
        """Materialize cell ``cid`` as a Region (O(pieces) construction)."""
        if self._cells[cid] is None:
            return self.region
        pieces = []
        for item in self.cell_items(cid):
            if item[0] == "wall":
                _, wid, end = item
                w = self.walls[wid]
                if end == "v":
                    pieces.append(SegPiece(w.vpt, w.fpt, rank=w.line_rank,
                                           start_rank=_rank_or_none(w.line_rank, w.vpt)))
                else:
                    pieces.append(SegPiece(w.fpt, w.vpt, rank=w.line_rank,
                                           start_rank=_rank_or_none(w.line_rank, w.fpt)))
            else:
                node_id = item[1]
                pieces.extend(self._arc_pieces(node_id, (node_id + 1) % len(self.nodes)))
        return Region(self.region.poly, pieces)

    def _arc_pieces(self, node_a: int, node_b: int) -> List:
        """Parent-region boundary pieces between two consecutive nodes."""
        edge_a, pt_a, rank_a, _ = self.nodes[node_a]
        edge_b, pt_b, _, _ = self.nodes[node_b]
        region = self.region
        m = region.vcount
        out = []
        cur_edge, cur_pt = edge_a, pt_a
        cur_rank = _rank_or_none(rank_a, pt_a)
        for _ in range(m + 2):
            if cur_edge == edge_b:
                ea = region.vertex(edge_b)
                eb = region.vertex(edge_b + 1)
                if seg_param_cmp(ea, eb, cur_pt, pt_b) <= 0:
                    out.extend(self._sub_piece(cur_edge, cur_pt, pt_b, cur_rank))
                    return out
            nxt_pt = region.vertex(cur_edge + 1)
            emitted = self._sub_piece(cur_edge, cur_pt, nxt_pt, cur_rank)
            out.extend(emitted)
            cur_edge = (cur_edge + 1) % m
            cur_pt = nxt_pt
            if emitted:  # an empty sub-piece must not reset the pending rank
                cur_rank = region.vertex_rank(cur_edge)
        raise AssertionError("arc walk failed to terminate")

    def _sub_piece(self, edge: int, p_from: tuple, p_to: tuple,
                   from_rank: Optional[tuple]) -> List:
        """Pieces of parent-region edge ``edge`` between two of its points."""
        if p_from == p_to:
            return []
        region = self.region
        pi, _ = region.piece_of_vertex(edge)
        parent_pc = region.pieces[pi]
        if isinstance(parent_pc, SegPiece):
            return [SegPiece(p_from, p_to, rank=parent_pc.rank, start_rank=from_rank)]
        poly = region.poly
        pos = region.poly_pos_of_vertex(edge)
        start = canonical_pos(poly, pos[0], p_from)
        end = canonical_pos(poly, pos[0], p_to)
        return [ChainPiece(start, end, start_rank=from_rank)]

    # ------------------------------------------------------------------
    # queries

    def locate(self, q, run: Optional[BudgetedRun] = None) -> int:
        """Cell containing q (O(total boundary) reads).  A point on a wall
        belongs to the cell that walks the wall downward, realizing the
        clockwise-left tie rule; other boundary points go to the first
        claiming cell in enumeration order."""
        q = tuple(q)
        run = run or self.run
        # on-wall points first: the shear decides the side (a point above the
        # wall's defining vertex lies symbolically east of its line, below it
        # west); the defining vertex itself goes to the downward-walking cell
        for w in self.walls:
            if q[0] == w.vpt[0] and _y_between(q, w):
                side = 1 if q[1] > w.line_rank[1] else (-1 if q[1] < w.line_rank[1] else 0)
                if side > 0:  # east cell walks the wall upward
                    end = "v" if w.direction == UP else "f"
                elif side < 0:
                    end = "v" if w.direction == DOWN else "f"
                else:
                    end = "v" if w.direction == DOWN else "f"
                return self._cell_of_item[("wall", w.wid, end)]
        boundary_cell = None
        for cid in range(self.cell_count):
            reg = self.cell_region(cid)
            with run.alloc(max(1, len(reg.pieces))):
                side = reg.contains(q, run)
            if side > 0:
                return cid
            if side == 0 and boundary_cell is None:
                boundary_cell = cid
        if boundary_cell is not None:
            return boundary_cell
        raise ValueError("point lies outside the region")

    def traverse(self, cid: int, visit, run: Optional[BudgetedRun] = None) -> None:
        """Visit each boundary element of a cell exactly once, clockwise.

        ``visit(kind, a, b, meta)`` receives 'edge' for parent-boundary
        elements and 'wall' for extension pieces."""
        run = run or self.run
        reg = self.cell_region(cid)
        with run.alloc(max(1, len(reg.pieces))):
            for k in range(reg.vcount):
                a = reg.vertex(k, run)
                b = reg.vertex(k + 1, run)
                pi, _ = reg.piece_of_vertex(k)
                kind = "wall" if isinstance(reg.pieces[pi], SegPiece) else "edge"
                visit(kind, a, b, pi)


def _rank_or_none(rank: tuple, point: tuple) -> Optional[tuple]:
    return None if rank == point else rank


def _y_between(q, w: Wall) -> bool:
    ys = sorted((w.vpt[1], w.fpt[1]))
    return ys[0] <= q[1] <= ys[1]


def _dir_cmp(a: tuple, b: tuple) -> int:
    """Angular order of symbolic directions (vector, ccw_eps) over [0, 2pi)."""
    (u, eu), (v, ev) = a, b
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return -1 if hu < hv else 1
    c = u[0] * v[1] - u[1] * v[0]
    if c != 0:
        return -1 if c > 0 else 1
    if eu != ev:
        return -1 if eu < ev else 1
    return 0


def _ccw_closer(base: tuple, x: tuple, y: tuple) -> bool:
    """Is x strictly closer than y sweeping counterclockwise from base?"""
    wx = _dir_cmp(base, x) > 0  # x angularly before base: wrapped around
    wy = _dir_cmp(base, y) > 0
    if wx != wy:
        return not wx
    return _dir_cmp(x, y) < 0


# ---------------------------------------------------------------------------
# construction


def step1_partition(region: Region, delta: int, run: BudgetedRun,
                    sub: BalancedSubdivision) -> None:
    """Extensions from every delta-th region vertex, feet via the block
    scheme in O(s)-sized groups."""
    m = region.vcount
    indices = range(0, m, delta)
    group_len = max(run.s, 1)
    for i0 in range(0, len(indices), group_len):
        feet = chain_foot_points(region, indices[i0:i0 + group_len], run)
        try:
            for vf in feet:
                sub.add_extension(vf, STEP_PARTITION)
        finally:
            feet.clear()


def step2_extreme(region: Region, delta: int, run: BudgetedRun,
                  sub: BalancedSubdivision) -> None:
    """Four extreme vertices per partition chain: both feet off the chain,
    extension one-sided, first encountered from vertex 0 clockwise (C) or
    counterclockwise (CC) with the extension on the left (L) / right (R).

    One pass of the full foot-point stream, holding one candidate per
    (chain, side, way); candidates flush when the stream leaves their chain.
    """
    m = region.vcount
    chain_count = -(-m // delta)
    current_chain = -1
    candidates: dict = {}

    def flush():
        for cand in candidates.values():
            sub.add_extension(cand[0], STEP_EXTREME)
        candidates.clear()

    with run.alloc(4 * 8):  # four candidate slots, O(1) words each
        for vf in all_foot_points(region, run):
            chain_idx = min(vf.vertex // delta, chain_count - 1)
            if chain_idx != current_chain:
                flush()
                current_chain = chain_idx
            if vf.up is None or vf.down is None:
                continue
            lo = chain_idx * delta
            hi = lo + delta if lo + delta < m else 0
            if _foot_on_chain(region, vf.up, lo, hi) or \
               _foot_on_chain(region, vf.down, lo, hi):
                continue
            prev_pt = region.vertex(vf.vertex - 1, run)
            next_pt = region.vertex(vf.vertex + 1, run)
            s1 = lex_cmp(prev_pt, vf.point)
            s2 = lex_cmp(next_pt, vf.point)
            if s1 == 0 or s1 != s2:
                continue  # the vertical line crosses the chain: no one side
            side = "L" if s1 > 0 else "R"
            first, last = _extension_span(region, sub, vf)
            for way in ("C", "CC"):
                key = (side, way)
                cand = candidates.get(key)
                if cand is None:
                    candidates[key] = (vf, first, last)
                elif way == "C" and sub._mark_cmp(first, cand[1]) < 0:
                    candidates[key] = (vf, first, last)
                elif way == "CC" and sub._mark_cmp(last, cand[2]) > 0:
                    candidates[key] = (vf, first, last)
        flush()


def _foot_on_chain(region: Region, foot, lo: int, hi: int) -> bool:
    """Is the foot (point, region edge) on the closed vertex chain [lo, hi]?"""
    pt, edge = foot
    if hi >= lo:
        if lo <= edge < hi:
            return True
    elif edge >= lo or edge < hi:
        return True
    return pt == region.vertex(lo) or pt == region.vertex(hi)


def _extension_span(region: Region, sub: BalancedSubdivision, vf: VertexFeet):
    """First and last boundary marks of an extension in clockwise order."""
    m = region.vcount
    marks = [(vf.vertex % m, vf.point, vf.point)]
    for foot in (vf.up, vf.down):
        if foot is None:
            continue
        pt, edge = foot
        marks.append((edge, pt, vf.point))
    first = last = marks[0]
    for mk in marks[1:]:
        if sub._mark_cmp(mk, first) < 0:
            first = mk
        if sub._mark_cmp(mk, last) > 0:
            last = mk
    return first, last


def step3_separators(region: Region, run: BudgetedRun,
                     sub: BalancedSubdivision) -> List[VertexFeet]:
    """Triple-separating extensions.  For every cell of the step-1+2
    subdivision with >= 3 extension occurrences on its boundary and every
    cyclically consecutive triple, pick the first-streamed region vertex
    whose feet (w.r.t. the cell) land in the two open chain gaps flanking
    the middle extension.  Returns the picks with feet remapped to the
    parent region."""
    picks: List[VertexFeet] = []
    for cid in range(sub.cell_count):
        occ_pieces = _extension_occurrences(sub, cid)
        if occ_pieces is None or len(occ_pieces) < 3:
            continue
        cellreg = sub.cell_region(cid)
        with run.alloc(len(cellreg.pieces) + 4 * len(occ_pieces)):
            found = _separators_for_cell(cellreg, occ_pieces, run)
        for vf in found:
            mapped = _map_feet_to_parent(region, cellreg, vf)
            if mapped is not None:
                picks.append(mapped)
    return picks


def _extension_occurrences(sub: BalancedSubdivision, cid: int):
    """Extension occurrences along one cell boundary as piece-index spans
    (ext_id, first_piece, last_piece) in the materialized region's order."""
    if sub._cells[cid] is None:
        return None
    occs = []
    piece_idx = 0
    for item in sub.cell_items(cid):
        if item[0] == "wall":
            w = sub.walls[item[1]]
            if occs and occs[-1][0] == w.ext_id and occs[-1][2] == piece_idx - 1:
                occs[-1] = (w.ext_id, occs[-1][1], piece_idx)
            else:
                occs.append((w.ext_id, piece_idx, piece_idx))
            piece_idx += 1
        else:
            node_id = item[1]
            piece_idx += len(sub._arc_pieces(node_id, (node_id + 1) % len(sub.nodes)))
    if len(occs) >= 2 and occs[0][0] == occs[-1][0] and occs[0][1] == 0:
        # the walk started mid-extension: merge the wrap-around occurrence
        occs[0] = (occs[0][0], occs[-1][1], occs[0][2])
        occs.pop()
    return occs


def _separators_for_cell(cellreg: Region, occs, run: BudgetedRun) -> List[VertexFeet]:
    k_ext = len(occs)
    npieces = len(cellreg.pieces)
    on_occ = [False] * npieces
    for _, first, last in occs:
        j = first
        while True:
            on_occ[j] = True
            if j == last:
                break
            j = (j + 1) % npieces
    gap_of_piece: List[Optional[int]] = [None] * npieces
    for i, (_, first, last) in enumerate(occs):
        j = (last + 1) % npieces
        while not on_occ[j]:
            gap_of_piece[j] = i
            j = (j + 1) % npieces

    def gap_of_edge(edge: int) -> Optional[int]:
        pi, _ = cellreg.piece_of_vertex(edge)
        return gap_of_piece[pi]

    found: Dict[int, VertexFeet] = {}
    for vf in all_foot_points(cellreg, run):
        if len(found) == k_ext:
            break
        if vf.up is None or vf.down is None:
            continue
        g1 = gap_of_edge(vf.up[1])
        g2 = gap_of_edge(vf.down[1])
        if g1 is None or g2 is None:
            continue
        for a, b in ((g1, g2), (g2, g1)):
            if (a + 1) % k_ext != b:
                continue
            triple = a  # separates occurrences (a, a+1, a+2)
            if triple in found:
                continue
            v_gap = gap_of_edge(vf.vertex)  # piece of the vertex's own edge
            pi, off = cellreg.piece_of_vertex(vf.vertex)
            if on_occ[pi] or v_gap == a or v_gap == b:
                continue  # the vertex must lie off the triple's chain
            found[triple] = vf
    return list(found.values())


def _map_feet_to_parent(region: Region, cellreg: Region,
                        vf: VertexFeet) -> Optional[VertexFeet]:
    """Remap a cell-relative pick onto the parent region.  Only picks whose
    defining point is a parent region vertex yield a storable extension."""
    k = _parent_vertex_index(region, cellreg, vf)
    if k is None:
        return None
    up = _parent_foot(region, vf.up)
    down = _parent_foot(region, vf.down)
    if up is None or down is None:
        return None
    return VertexFeet(vertex=k, point=vf.point, up=up, down=down)


def _parent_vertex_index(region: Region, cellreg: Region, vf: VertexFeet) -> Optional[int]:
    pt, poly_idx = cellreg.vertex_entry(vf.vertex)
    for k in range(region.vcount):
        cand, cand_idx = region.vertex_entry(k)
        if cand == pt:
            return k
    return None


def _parent_foot(region: Region, foot):
    if foot is None:
        return None
    pt = foot[0]
    m = region.vcount
    for k in range(m):
        a = region.vertex(k)
        b = region.vertex(k + 1)
        if a == b or pt == b:
            continue
        if on_segment(pt, a, b):
            return (pt, k)
    return None


def build_subdivision(region: Region, s: int, run: BudgetedRun,
                      delta: Optional[int] = None) -> BalancedSubdivision:
    """All three steps; the returned structure owns O(min{m/s, s}) walls."""
    m = region.vcount
    if delta is None:
        delta = choose_delta(m, max(1, min(s, m)))
    sub = BalancedSubdivision(region, run, delta)
    step1_partition(region, delta, run, sub)
    step2_extreme(region, delta, run, sub)
    sub.rebuild()
    for vf in step3_separators(region, run, sub):
        sub.add_extension(vf, STEP_THIRD)
    sub.rebuild()
    return sub
