"""Foot points: where vertical rays from boundary vertices first exit.

The workspace-bounded computation follows the block scheme: to find the feet
of an O(s)-vertex group, the region boundary is read in blocks of O(s)
vertices, each (group, block) pair is resolved by bisection over the
lexicographically sorted group, and only the nearest candidate per vertex
survives between blocks.  Reads are O(m) per group and O(m^2/s) for all
vertices of an m-vertex region.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .geometry import DOWN, UP, closer_hit, escapes_at_vertex, ray_hit_segment
from .memory import BudgetedRun, Words
from .region import Region


@dataclass
class VertexFeet:
    """Foot points of one region vertex.  ``up``/``down`` hold (point,
    region edge index); None means the foot point is the vertex itself."""

    vertex: int
    point: tuple
    up: Optional[Tuple[tuple, int]]
    down: Optional[Tuple[tuple, int]]

    def foot(self, direction: int):
        return self.up if direction == UP else self.down


def chain_foot_points(region: Region, indices: Sequence[int],
                      run: BudgetedRun, block_len: Optional[int] = None) -> Words:
    """Feet of an explicit O(s) group of region vertices.

    Returns a charged Words list of VertexFeet (cost borne by ``run``; the
    caller releases it with .clear()).  Charges O(len(indices) + block)
    transient words; reads O(m + len(indices)).
    """
    m = region.vcount
    if block_len is None:
        block_len = max(run.s, 8)

    chain = Words(run, cost=5)  # (index, point, self_up, self_down, eff_rank)
    for k in indices:
        k %= m
        prev_pt = region.vertex(k - 1, run)
        pt = region.vertex(k, run)
        next_pt = region.vertex(k + 1, run)
        prev_eps = 1 if region.edge_rank(k - 1) is not None else 0
        next_eps = 1 if region.edge_rank(k) is not None else 0
        eff = region.vertex_rank(k) or pt
        chain.append((k, pt,
                      escapes_at_vertex(prev_pt, pt, next_pt, UP, prev_eps, next_eps),
                      escapes_at_vertex(prev_pt, pt, next_pt, DOWN, prev_eps, next_eps),
                      eff))

    # sorted by symbolic x for the per-block sweeps
    order = Words(run, cost=1, items=sorted(range(len(chain)),
                                            key=lambda j: chain[j][4]))
    keys = Words(run, cost=1, items=[chain[j][4] for j in order])

    best_up = Words(run, cost=2, items=[None] * len(chain))
    best_down = Words(run, cost=2, items=[None] * len(chain))

    buf = Words(run, cost=2)   # (point, eff_rank) per block vertex
    ranks = Words(run, cost=1)
    for blk in range(0, m, block_len):
        hi = min(blk + block_len, m)
        buf.clear()
        ranks.clear()
        for k in range(blk, hi + 1):
            kk = k % m
            pt = region.vertex(kk, run)
            buf.append((pt, region.vertex_rank(kk) or pt))
            if k < hi:
                ranks.append(region.edge_rank(kk))
        _sweep_block(chain, order, keys, blk, buf, ranks, best_up, best_down)
    buf.clear()
    ranks.clear()

    out = Words(run, cost=6)
    for j in range(len(chain)):
        k, pt, self_up, self_down, _ = chain[j]
        bu = best_up[j]
        bd = best_down[j]
        if not self_up and bu is None:
            raise AssertionError(f"no upward foot for region vertex {k}")
        if not self_down and bd is None:
            raise AssertionError(f"no downward foot for region vertex {k}")
        out.append(VertexFeet(
            vertex=k,
            point=pt,
            up=None if self_up else (bu.point(pt[0]), bu.tag),
            down=None if self_down else (bd.point(pt[0]), bd.tag),
        ))
    best_up.clear()
    best_down.clear()
    order.clear()
    keys.clear()
    chain.clear()
    return out


def _sweep_block(chain, order, keys, blk, buf, ranks, best_up, best_down) -> None:
    """Update per-group-vertex nearest hits with one boundary block.

    For each block edge, only group vertices inside the edge's sheared
    x-span are touched (found by bisection), so the work per pair is
    O(s log s + matches)."""
    raw_keys = keys.raw()
    raw_order = order.raw()
    nbuf = len(buf)
    for t in range(nbuf - 1):
        a, a_eff = buf[t]
        b, b_eff = buf[t + 1]
        if a == b:
            continue
        if a_eff <= b_eff:
            lo_key, hi_key = a_eff, b_eff
        else:
            lo_key, hi_key = b_eff, a_eff
        j0 = bisect.bisect_left(raw_keys, lo_key)
        j1 = bisect.bisect_right(raw_keys, hi_key)
        if j0 >= j1:
            continue
        edge_idx = blk + t
        rank = ranks[t]
        a_rank = None if a_eff == a else a_eff
        b_rank = None if b_eff == b else b_eff
        for jj in range(j0, j1):
            j = raw_order[jj]
            k, pt, self_up, self_down, eff = chain[j]
            o_rank = None if eff == pt else eff
            if not self_up:
                hit = ray_hit_segment(pt, UP, a, b, tag=edge_idx, rank=rank,
                                      origin_rank=o_rank, a_rank=a_rank, b_rank=b_rank)
                if hit is not None:
                    cur = best_up[j]
                    best_up[j] = hit if cur is None else closer_hit(cur, hit, UP)
            if not self_down:
                hit = ray_hit_segment(pt, DOWN, a, b, tag=edge_idx, rank=rank,
                                      origin_rank=o_rank, a_rank=a_rank, b_rank=b_rank)
                if hit is not None:
                    cur = best_down[j]
                    best_down[j] = hit if cur is None else closer_hit(cur, hit, DOWN)


def all_foot_points(region: Region, run: BudgetedRun,
                    chain_len: Optional[int] = None):
    """Stream the feet of every region vertex in index order.

    Applies the group procedure to consecutive s-vertex ranges; O(m^2/s)
    reads, O(s) words at any time.
    """
    m = region.vcount
    if chain_len is None:
        chain_len = max(run.s, 1)
    for start in range(0, m, chain_len):
        feet = chain_foot_points(region, range(start, min(start + chain_len, m)), run)
        try:
            for vf in feet:
                yield vf
        finally:
            feet.clear()


def vertical_decomposition(chain_a: List[tuple], chain_b: List[tuple],
                           run: BudgetedRun) -> List[Tuple[Optional[tuple], Optional[tuple]]]:
    """Nearest up/down hits of chain A's vertices against chain B's edges.

    Both chains are explicit point sequences of combined size O(s) (they
    must not cross).  Returns one (up_hit, down_hit) pair per A vertex,
    None where the ray misses B entirely."""
    with run.alloc(len(chain_a) * 3 + len(chain_b)):
        out = []
        for pt in chain_a:
            best = {UP: None, DOWN: None}
            for t in range(len(chain_b) - 1):
                a, b = chain_b[t], chain_b[t + 1]
                if a == b:
                    continue
                for direction in (UP, DOWN):
                    hit = ray_hit_segment(pt, direction, a, b, tag=t)
                    if hit is not None:
                        cur = best[direction]
                        best[direction] = hit if cur is None else closer_hit(
                            cur, hit, direction)
            out.append(tuple(best[d].point(pt[0]) if best[d] is not None else None
                             for d in (UP, DOWN)))
        return out
