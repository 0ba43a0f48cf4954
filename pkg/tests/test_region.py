from polyws.generators import generate_polygon
from polyws.geometry import rat
from polyws.memory import BudgetedRun
from polyws.polygon import Polygon
from polyws.region import (ChainPiece, Region, SegPiece, canonical_pos, pos_in_open_arc,
                           poly_pos_cmp, vertex_pos, whole_polygon)

SQUARE = Polygon([(0, 0), (0, 4), (4, 4), (4, 0)])
L_SHAPE = Polygon([(0, 0), (0, 4), (2, 4), (2, 2), (4, 2), (4, 0)])


def test_whole_polygon_region():
    r = whole_polygon(SQUARE)
    assert r.vcount == 4
    assert [r.vertex_entry(k) for k in range(4)] == [
        ((0, 0), 0), ((0, 4), 1), ((4, 4), 2), ((4, 0), 3)]
    assert r.area2() == SQUARE.area2() == 32
    assert r.contains((1, 1)) == 1
    assert r.contains((0, 2)) == 0
    assert r.contains((9, 9)) == -1


def test_region_read_counting():
    r = whole_polygon(SQUARE)
    run = BudgetedRun(s=4)
    list(r.vertices(run))
    assert run.ledger.input_reads == 4


def test_canonical_pos():
    # a point equal to the next vertex normalizes to that vertex's edge start
    assert canonical_pos(SQUARE, 0, (0, 4)) == (1, (0, 4))
    assert canonical_pos(SQUARE, 1, (2, 4)) == (1, (2, 4))


def test_poly_pos_cmp():
    a = vertex_pos(SQUARE, 0)
    mid = (0, (0, 2))
    b = vertex_pos(SQUARE, 1)
    assert poly_pos_cmp(SQUARE, a, mid) < 0
    assert poly_pos_cmp(SQUARE, mid, b) < 0
    assert poly_pos_cmp(SQUARE, a, a) == 0


def test_pos_in_open_arc_wraps():
    a = vertex_pos(SQUARE, 3)
    b = vertex_pos(SQUARE, 1)
    inside = (3, (2, 0))   # on edge 3, between v3 and v0
    outside = (1, (2, 4))  # on edge 1
    assert pos_in_open_arc(SQUARE, a, b, inside)
    assert not pos_in_open_arc(SQUARE, a, b, outside)
    assert not pos_in_open_arc(SQUARE, a, b, a)


def test_chain_piece_region():
    # arc of the L from mid of edge 0 to mid of edge 4, closed by two segments
    start = (0, (0, 2))
    end = (4, (4, 1))
    apex = (1, 1)
    r = Region(L_SHAPE, [
        ChainPiece(start, end),
        SegPiece((4, 1), apex),
        SegPiece(apex, (0, 2)),
    ])
    pts = list(r.vertices())
    assert pts == [(0, 2), (0, 4), (2, 4), (2, 2), (4, 2), (4, 1), (1, 1)]
    entries = list(r.entries())
    assert entries[0] == ((0, 2), None)
    assert entries[1] == ((0, 4), 1)
    assert entries[5] == ((4, 1), None)
    assert entries[6] == ((1, 1), None)
    assert r.contains((1, 3)) == 1
    assert r.contains((3, rat(1, 2))) == -1


def test_chain_piece_starting_at_vertex():
    start = vertex_pos(L_SHAPE, 1)
    end = (3, (2, 3))  # wait: edge 3 goes (2,2)->(4,2); (2,3) is not on it
    end = (2, (2, 3))  # edge 2 goes (2,4)->(2,2); (2,3) is on it
    r = Region(L_SHAPE, [ChainPiece(start, end), SegPiece((2, 3), (0, 4))])
    assert list(r.vertices()) == [(0, 4), (2, 4), (2, 3)]
    assert r.vertex_entry(0) == ((0, 4), 1)
    assert r.vertex_entry(1) == ((2, 4), 2)
    assert r.vertex_entry(2) == ((2, 3), None)


def test_region_area_of_cut_square():
    # square cut along x=2: left cell
    r = Region(SQUARE, [
        ChainPiece(vertex_pos(SQUARE, 0), (1, (2, 4))),
        SegPiece((2, 4), (2, 0)),
        ChainPiece((3, (2, 0)), vertex_pos(SQUARE, 0)),
    ])
    assert r.area2() == 16
    assert [e for e in r.entries()] == [
        ((0, 0), 0), ((0, 4), 1), ((2, 4), None), ((2, 0), None)]
