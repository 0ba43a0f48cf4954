import pytest

from polyws.footpoints import all_foot_points, chain_foot_points, vertical_decomposition
from polyws.generators import generate_polygon
from polyws.geometry import UP, DOWN, rat
from polyws.memory import BudgetedRun
from polyws.oracles import oracle_foot_points
from polyws.polygon import Polygon
from polyws.region import whole_polygon


def brute_feet(poly, v):
    up, down = oracle_foot_points(poly, v)
    return ((None if up.is_self else (up.point, up.edge)),
            (None if down.is_self else (down.point, down.edge)))


def assert_matches_oracle(poly, s=4):
    region = whole_polygon(poly)
    run = BudgetedRun(s=s)
    seen = 0
    for vf in all_foot_points(region, run):
        exp_up, exp_down = brute_feet(poly, vf.vertex)
        assert vf.up == exp_up, f"vertex {vf.vertex} up"
        assert vf.down == exp_down, f"vertex {vf.vertex} down"
        seen += 1
    assert seen == poly.n
    assert run.ledger.current_words == 0  # no workspace leak


def test_square_matches_oracle():
    assert_matches_oracle(Polygon([(0, 0), (0, 2), (2, 2), (2, 0)]))


def test_convex_matches_oracle():
    assert_matches_oracle(generate_polygon("convex", 16, 0), s=4)


def test_comb_matches_oracle():
    assert_matches_oracle(generate_polygon("comb", 30, 2), s=4)


def test_spiral_matches_oracle():
    assert_matches_oracle(generate_polygon("spiral", 48, 1), s=6)


def test_random_matches_oracle():
    assert_matches_oracle(generate_polygon("random2opt", 60, 9), s=8)


def test_single_block_degenerate():
    poly = generate_polygon("convex", 12, 3)
    region = whole_polygon(poly)
    run = BudgetedRun(s=poly.n)  # n = s: one chain, one block pass
    feet = list(all_foot_points(region, run))
    assert len(feet) == poly.n
    for vf in feet:
        exp_up, exp_down = brute_feet(poly, vf.vertex)
        assert (vf.up, vf.down) == (exp_up, exp_down)


def test_comb_tooth_tip_foot_on_spine():
    poly = generate_polygon("comb", 30, 2)
    region = whole_polygon(poly)
    run = BudgetedRun(s=8)
    # tooth tips are local maxima; their up feet are themselves, and gap
    # floors shoot up into tooth gaps -- just validate against the oracle on
    # every vertex plus spot-check one known tip-like vertex exists
    tips = [vf for vf in all_foot_points(region, run) if vf.up is None]
    assert tips, "comb should have upward-escaping vertices"


def test_reads_scale_with_blocks():
    poly = generate_polygon("convex", 64, 1)
    region = whole_polygon(poly)
    r_small = BudgetedRun(s=4)
    list(all_foot_points(region, r_small))
    r_big = BudgetedRun(s=32)
    list(all_foot_points(region, r_big))
    # O(m^2/s): smaller workspace must read substantially more
    assert r_small.ledger.input_reads > 2 * r_big.ledger.input_reads


def test_peak_words_bounded_by_s():
    for s in (4, 8, 16):
        poly = generate_polygon("random2opt", 96, 5)
        run = BudgetedRun(s=s)
        list(all_foot_points(whole_polygon(poly), run))
        assert run.ledger.peak_words <= 40 * s


def test_vertical_decomposition_single_vertex():
    run = BudgetedRun(s=4)
    out = vertical_decomposition([(1, 0)], [(0, 2), (2, 2)], run)
    assert out == [((1, 2), None)]


def test_vertical_decomposition_disjoint_spans():
    run = BudgetedRun(s=4)
    out = vertical_decomposition([(10, 0)], [(0, 2), (2, 2)], run)
    assert out == [(None, None)]


def test_vertical_decomposition_staircases():
    # two staircase chains; compare against the quadratic all-pairs oracle
    run = BudgetedRun(s=32)
    a = []
    b = []
    x = 0
    for i in range(16):
        a.append((x, i % 3))
        b.append((x, 6 + (i % 4)))
        x += 2
    got = vertical_decomposition(a, b, run)
    from polyws.geometry import closer_hit, ray_hit_segment

    for pt, (up_hit, down_hit) in zip(a, got):
        best = None
        for t in range(len(b) - 1):
            h = ray_hit_segment(pt, UP, b[t], b[t + 1], tag=t)
            if h is not None:
                best = h if best is None else closer_hit(best, h, UP)
        assert up_hit == (None if best is None else best.point(pt[0]))
        assert down_hit is None
