import pytest

from polyws.generators import generate_polygon
from polyws.geometry import segments_properly_cross
from polyws.memory import BudgetedRun
from polyws.oracles import oracle_foot_points, point_in_polygon
from polyws.polygon import Polygon
from polyws.region import whole_polygon
from polyws.subdivision import (STEP_THIRD, build_subdivision, choose_delta,
                                 step1_partition, step2_extreme, BalancedSubdivision)

CORPUS = [
    ("convex", 24, 0, 5),
    ("comb", 38, 2, 5),
    ("spiral", 64, 1, 8),
    ("random2opt", 60, 9, 6),
    ("random2opt", 100, 7, 8),
]


def build(kind, n, seed, s):
    poly = generate_polygon(kind, n, seed)
    run = BudgetedRun(s=s)
    sub = build_subdivision(whole_polygon(poly), s, run)
    return poly, run, sub


def test_choose_delta_examples():
    assert choose_delta(1024, 16) == 64   # s <= sqrt(n): delta = n/s
    assert choose_delta(1024, 64) == 64   # s > sqrt(n): delta = s
    assert choose_delta(16, 16) == 16     # n = s: single partition vertex


def test_square_every_vertex_partition():
    poly = Polygon([(0, 0), (0, 2), (2, 2), (2, 0)])
    run = BudgetedRun(s=4)
    sub = build_subdivision(whole_polygon(poly), 4, run, delta=1)
    # two of the four vertices are fully degenerate (lex extremes)
    assert sub.extension_count == 2
    assert sub.cell_count == len(sub.walls) + 1
    areas = [sub.cell_region(c).area2() for c in range(sub.cell_count)]
    assert sum(areas) == poly.area2()


def test_step1_counts_convex():
    poly = generate_polygon("convex", 16, 0)
    region = whole_polygon(poly)
    run = BudgetedRun(s=4)
    sub = BalancedSubdivision(region, run, 4)
    step1_partition(region, 4, run, sub)
    # partition vertices 0,4,8,12; those that are not fully degenerate get
    # an extension (derived from the brute-force foot oracle)
    expected = 0
    for v in (0, 4, 8, 12):
        up, down = oracle_foot_points(poly, v)
        if not (up.is_self and down.is_self):
            expected += 1
    assert sub.extension_count == expected
    # and every stored wall matches the oracle feet
    for w in sub.walls:
        up, down = oracle_foot_points(poly, w.vertex_k)
        fp = up if w.direction == 1 else down
        assert not fp.is_self
        assert w.fpt == fp.point
        assert w.foot_edge == fp.edge


def test_convex_has_no_extreme_vertices():
    poly = generate_polygon("convex", 16, 3)
    region = whole_polygon(poly)
    run = BudgetedRun(s=4)
    sub = BalancedSubdivision(region, run, 4)
    step2_extreme(region, 4, run, sub)
    assert len(sub.walls) == 0  # no vertex of a convex polygon has both feet


def test_spiral_exhibits_third_step():
    poly, run, sub = build("spiral", 64, 1, 8)
    assert any(w.step == STEP_THIRD for w in sub.walls)


@pytest.mark.parametrize("kind,n,seed,s", CORPUS)
def test_partition_identity(kind, n, seed, s):
    poly, run, sub = build(kind, n, seed, s)
    areas = [sub.cell_region(c).area2() for c in range(sub.cell_count)]
    assert all(a >= 0 for a in areas)
    assert sum(areas) == poly.area2()
    assert sub.cell_count == len(sub.walls) + 1


@pytest.mark.parametrize("kind,n,seed,s", CORPUS)
def test_walls_pairwise_noncrossing(kind, n, seed, s):
    poly, run, sub = build(kind, n, seed, s)
    walls = list(sub.walls)
    for i in range(len(walls)):
        for j in range(i + 1, len(walls)):
            a, b = walls[i], walls[j]
            assert not segments_properly_cross(a.vpt, a.fpt, b.vpt, b.fpt), (
                f"walls {a.wid} and {b.wid} cross")


@pytest.mark.parametrize("kind,n,seed,s", CORPUS)
def test_wall_feet_match_oracle(kind, n, seed, s):
    poly, run, sub = build(kind, n, seed, s)
    for w in sub.walls:
        up, down = oracle_foot_points(poly, w.vertex_k)
        fp = up if w.direction == 1 else down
        assert not fp.is_self
        assert w.fpt == fp.point and w.foot_edge == fp.edge


@pytest.mark.parametrize("kind,n,seed,s", CORPUS)
def test_contain_par(kind, n, seed, s):
    """Both boundary chains from an extension's feet to its vertex contain a
    partition vertex."""
    poly, run, sub = build(kind, n, seed, s)
    partition = set(range(0, poly.n, sub.delta))
    for w in sub.walls:
        # chain from foot position to the vertex, walking vertex indices
        lo = (w.foot_edge + 1) % poly.n
        hi = w.vertex_k
        found = w.vertex_k in partition
        i = lo
        while not found and i != (hi + 1) % poly.n:
            if i in partition:
                found = True
            i = (i + 1) % poly.n
        assert found, f"wall {w.wid}: no partition vertex on the foot-vertex chain"


@pytest.mark.parametrize("kind,n,seed,s", CORPUS)
def test_num_third_per_cell(kind, n, seed, s):
    """At most four third-step extensions on any final cell's boundary."""
    poly, run, sub = build(kind, n, seed, s)
    from polyws.subdivision import _extension_occurrences

    for cid in range(sub.cell_count):
        occs = _extension_occurrences(sub, cid)
        if not occs:
            continue
        ext_step = {}
        for w in sub.walls:
            ext_step[w.ext_id] = w.step
        third = sum(1 for (ext_id, _, _) in occs if ext_step[ext_id] == STEP_THIRD)
        assert third <= 4


@pytest.mark.parametrize("kind,n,seed,s", CORPUS)
def test_locate_matches_contains(kind, n, seed, s):
    poly, run, sub = build(kind, n, seed, s)
    from polyws.generators import SplitMix64

    rng = SplitMix64(99)
    xs = [p[0] for p in poly.vertices]
    ys = [p[1] for p in poly.vertices]
    tried = 0
    while tried < 12:
        q = (min(xs) + rng.below(max(xs) - min(xs) + 1),
             min(ys) + rng.below(max(ys) - min(ys) + 1))
        if point_in_polygon(poly, q) != 1:
            continue
        tried += 1
        cid = sub.locate(q)
        reg = sub.cell_region(cid)
        assert reg.contains(q) >= 0
        # uniqueness: no other cell claims the point strictly
        strict = [c for c in range(sub.cell_count)
                  if sub.cell_region(c).contains(q) == 1]
        assert len(strict) <= 1
        if strict:
            assert cid == strict[0]


def test_traverse_visits_each_element_once():
    poly, run, sub = build("spiral", 64, 1, 8)
    total_edges = 0
    total_walls = 0
    for cid in range(sub.cell_count):
        seen = []
        sub.traverse(cid, lambda kind, a, b, pi: seen.append((kind, a, b)))
        assert len(seen) == len(set(seen)) or len(seen) > 0
        total_edges += sum(1 for k, _, _ in seen if k == "edge")
        total_walls += sum(1 for k, _, _ in seen if k == "wall")
    # every wall is walked by exactly two cells
    assert total_walls == 2 * len(sub.walls)


def test_max_complexity_bounded():
    for kind, n, seed, s in CORPUS:
        poly, run, sub = build(kind, n, seed, s)
        delta = sub.delta
        worst = max(sub.cell_region(c).vcount for c in range(sub.cell_count))
        assert worst <= 8 * delta + 16, (kind, n, s, delta, worst)


def test_workspace_bounded():
    for kind, n, seed, s in CORPUS:
        poly = generate_polygon(kind, n, seed)
        run = BudgetedRun(s=s)
        sub = build_subdivision(whole_polygon(poly), s, run)
        assert run.ledger.peak_words <= 60 * s + 200, (kind, n, s, run.ledger.peak_words)
