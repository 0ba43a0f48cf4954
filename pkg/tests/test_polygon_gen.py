import io

import pytest

from polyws.generators import SplitMix64, generate_polygon
from polyws.geometry import orient, signed_area2
from polyws.polygon import (Polygon, PolygonError, dump_polygon, find_self_intersection,
                            format_point, load_polygon, parse_point)
from polyws.oracles import point_in_polygon


def test_load_square():
    poly = load_polygon(io.StringIO("4\n0 0\n0 2\n2 2\n2 0\n"))
    assert poly.n == 4
    assert poly.vertices == ((0, 0), (0, 2), (2, 2), (2, 0))


def test_load_counterclockwise_rejected():
    # (0,0),(4,0),(2,2) has positive signed area, i.e. counterclockwise
    with pytest.raises(PolygonError, match="counterclockwise"):
        load_polygon(io.StringIO("3\n0 0\n4 0\n2 2\n"))


def test_load_clockwise_triangle_ok():
    # (0,0),(2,2),(4,0) is clockwise by the signed-area oracle (area2 = -8)
    poly = load_polygon(io.StringIO("3\n0 0\n2 2\n4 0\n"))
    assert signed_area2(poly.vertices) == -8


def test_load_nonsimple_rejected():
    with pytest.raises(PolygonError, match="not simple"):
        load_polygon(io.StringIO("4\n0 0\n2 2\n0 2\n2 0\n"))


def test_load_duplicate_rejected():
    with pytest.raises(PolygonError, match="duplicate"):
        load_polygon(io.StringIO("4\n0 0\n0 2\n0 0\n2 0\n"))


def test_dump_roundtrip():
    poly = load_polygon(io.StringIO("4\n0 0\n0 2\n2 2\n2 0\n"))
    buf = io.StringIO()
    dump_polygon(poly, buf)
    again = load_polygon(io.StringIO(buf.getvalue()))
    assert again.vertices == poly.vertices


def test_splitmix_deterministic():
    a = SplitMix64(42)
    b = SplitMix64(42)
    assert [a.next() for _ in range(5)] == [b.next() for _ in range(5)]
    c = SplitMix64(43)
    assert a.next() != c.next()


def test_convex_generator():
    poly = generate_polygon("convex", 8, 0)
    assert poly.n == 8
    v = poly.vertices
    # convexity: every consecutive triple turns the same way (clockwise)
    for i in range(8):
        assert orient(v[i], v[(i + 1) % 8], v[(i + 2) % 8]) == -1


@pytest.mark.parametrize("kind,n", [
    ("convex", 16), ("spiral", 64), ("comb", 30), ("random2opt", 60),
])
def test_generators_simple_and_clockwise(kind, n):
    poly = generate_polygon(kind, n, 7)
    assert poly.n == n
    assert signed_area2(poly.vertices) < 0
    assert find_self_intersection(poly.vertices) is None


def test_generator_deterministic():
    a = generate_polygon("random2opt", 40, 3)
    b = generate_polygon("random2opt", 40, 3)
    assert a.vertices == b.vertices
    c = generate_polygon("random2opt", 40, 4)
    assert a.vertices != c.vertices


def test_random2opt_simplicity_oracle():
    poly = generate_polygon("random2opt", 100, 7)
    assert find_self_intersection(poly.vertices) is None


def test_numpy_simplicity_agrees_with_brute():
    poly = generate_polygon("random2opt", 80, 11)
    verts = list(poly.vertices)
    from polyws.polygon import _find_self_intersection_numpy

    assert _find_self_intersection_numpy(verts) is None
    # introduce a crossing and check both notice
    verts[10], verts[40] = verts[40], verts[10]
    brute = find_self_intersection(tuple(verts))
    fast = _find_self_intersection_numpy(verts)
    assert (brute is None) == (fast is None)


def test_point_in_polygon():
    poly = Polygon([(0, 0), (0, 4), (4, 4), (4, 0)])
    assert point_in_polygon(poly, (2, 2)) == 1
    assert point_in_polygon(poly, (0, 2)) == 0
    assert point_in_polygon(poly, (5, 2)) == -1
    assert point_in_polygon(poly, (0, 0)) == 0


def test_format_and_parse_point():
    from polyws.geometry import rat

    assert format_point((3, -2)) == "3 -2"
    assert format_point((rat(1, 2), rat(7, 1))) == "1/2 7"
    assert parse_point("3,4") == (3, 4)
    assert parse_point("1/2 2") == (rat(1, 2), 2)
    assert parse_point("3.5, 1") == (rat(7, 2), 1)
