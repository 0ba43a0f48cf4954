"""Exact planar primitives shared by every algorithm in the package.

Points are plain ``(x, y)`` tuples whose coordinates are Python ints (input
vertices) or exact rationals (derived points such as chord feet).  All
predicates are computed with exact arithmetic; there is no epsilon anywhere.

Degenerate x-coordinates are handled by a symbolic shear: instead of
transforming coordinates we compare points lexicographically (x, then y),
which is equivalent to an infinitesimal positive shear of the plane.  The
"vertical" direction stays the true vertical; every tie rule below is the
exact limit of the sheared picture.
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

try:  # gmpy2's mpq is a drop-in exact rational, ~20x faster than Fraction
    from gmpy2 import mpq as _mpq

    def rat(num, den=1):
        return _mpq(num, den)

except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _mpq

    def rat(num, den=1):
        return _mpq(num, den)


Point = Tuple  # (x, y); coordinates int or rational
Vec = Tuple

UP = 1
DOWN = -1


def sign(v) -> int:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def cross(o: Point, a: Point, b: Point):
    """Twice the signed area of triangle o-a-b (positive = left turn)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the signed area of abc: +1 left turn, -1 right turn, 0 collinear."""
    return sign(cross(a, b, c))


def orient_sym(a: Point, ca, b: Point, cb, c: Point, cc) -> int:
    """Orientation with the shear's symbolic x-offsets.

    A point lying on the sheared vertical line of a defining vertex w sits at
    true-space x + eps*(w.y - y); ``ca/cb/cc`` are those offsets (0 for plain
    points).  The eps-order term of the determinant is the orientation of the
    offset/y points, which breaks exact collinearities of stacked verticals.
    """
    t = sign(cross(a, b, c))
    if t != 0 or (ca == 0 and cb == 0 and cc == 0):
        return t
    return sign((cb - ca) * (c[1] - a[1]) - (b[1] - a[1]) * (cc - ca))


def lex_cmp(a: Point, b: Point) -> int:
    """Order under the symbolic shear: x first, y breaks ties."""
    if a[0] != b[0]:
        return -1 if a[0] < b[0] else 1
    if a[1] != b[1]:
        return -1 if a[1] < b[1] else 1
    return 0


def sheared_less(a: Point, b: Point) -> bool:
    return lex_cmp(a, b) < 0


def line_side(q: Point, origin: Point) -> int:
    """Side of q relative to the sheared vertical line through origin.

    -1 = left, +1 = right, 0 = exactly the origin point.  Under the shear the
    line through ``origin`` contains no other input point, so 0 only means
    coordinate-equality.
    """
    return lex_cmp(q, origin)


def dot(u: Vec, v: Vec):
    return u[0] * v[0] + u[1] * v[1]


def vcross(u: Vec, v: Vec):
    return u[0] * v[1] - u[1] * v[0]


def sym_cross_sign(a, ea: int, b, eb: int) -> int:
    """Sign of cross(R_ea a, R_eb b) where R_e rotates CCW by e infinitesimal
    angles (e in {0, 1}; shear-vertical directions carry e = 1)."""
    c = sign(vcross(a, b))
    if c != 0:
        return c
    if ea == eb:
        return 0
    return sign((eb - ea) * dot(a, b))


def vertical_dir_in_cone_cw(start, end, direction: int,
                            start_eps: int = 0, end_eps: int = 0) -> bool:
    """Is the sheared vertical direction strictly inside the clockwise cone
    swept from ``start`` to ``end``?

    ``direction`` is UP for (0,1) or DOWN for (0,-1); the germ carries the
    symbolic CCW rotation of the shear.  Cone edges along shear-vertical
    boundary pieces (subdivision walls) carry the same rotation via the eps
    flags.  Used with start = (next - v) and end = (prev - v) this is the
    interior-direction test at vertex v of a clockwise boundary.
    """
    d = (0, 1) if direction == UP else (0, -1)
    # clockwise cone from start to end == ccw cone from end to start
    c1 = sym_cross_sign(end, end_eps, d, 1)      # want d strictly ccw of end
    c2 = sym_cross_sign(d, 1, start, start_eps)  # want d strictly cw of start
    cs = sym_cross_sign(end, end_eps, start, start_eps)
    if cs > 0:
        return c1 > 0 and c2 > 0
    if cs < 0:
        return c1 > 0 or c2 > 0
    # cone edges symbolically parallel
    if dot(end, start) < 0:  # straight vertex: open half-plane left of end
        return c1 > 0
    # spike (zero-angle) vertex: empty interior cone
    return False


def escapes_at_vertex(prev_pt: Point, v: Point, next_pt: Point, direction: int,
                      prev_eps: int = 0, next_eps: int = 0) -> bool:
    """True when the sheared vertical ray from v leaves the region at once,
    i.e. the foot point of v in that direction is v itself.

    The boundary is clockwise, so the interior cone at v spans clockwise
    from (next - v) to (prev - v).  The eps flags mark neighbors connected
    through shear-vertical wall pieces.
    """
    s = (next_pt[0] - v[0], next_pt[1] - v[1])
    e = (prev_pt[0] - v[0], prev_pt[1] - v[1])
    return not vertical_dir_in_cone_cw(s, e, direction, next_eps, prev_eps)


class RayHit:
    """One candidate hit of a sheared vertical ray against a segment.

    The hit ordinate is kept as an exact pair (num, den) with den > 0 so the
    nearest-hit comparisons stay in integers whenever the inputs are integers.
    ``endpoint`` is set when the hit coincides with a segment endpoint that
    lies exactly on the (unsheared) vertical line; ``other`` is then the far
    endpoint, needed for the symbolic tie-break between two such hits.
    """

    __slots__ = ("num", "den", "endpoint", "other", "tag")

    def __init__(self, num, den, endpoint, other, tag):
        self.num = num
        self.den = den
        self.endpoint = endpoint
        self.other = other
        self.tag = tag

    def point(self, x) -> Point:
        y = rat(self.num, self.den)
        if y.denominator == 1:
            y = int(y)
        return (x, y)

    def y_cmp(self, o: "RayHit") -> int:
        return sign(self.num * o.den - o.num * self.den)


def ray_hit_segment(origin: Point, direction: int, a: Point, b: Point, tag=None,
                    rank: Optional[Point] = None,
                    origin_rank: Optional[Point] = None,
                    a_rank: Optional[Point] = None,
                    b_rank: Optional[Point] = None) -> Optional[RayHit]:
    """Hit of the sheared vertical ray from ``origin`` against segment ab.

    Returns None unless the segment crosses the sheared line through origin
    strictly beyond origin in the given direction.  Segments with an endpoint
    equal to origin never produce a hit (they are "incident").

    Ranks are the symbolic x-coordinates of the shear: a point's sheared
    line is the one through its rank (default: the point itself).  ``rank``
    marks a wholly shear-vertical segment (a subdivision wall), which is
    parallel to every ray; endpoint ranks arise where a wall's foot split a
    boundary edge, placing the corner on the *wall's* line rather than on
    the line through its own coordinates.
    """
    o_eff = origin if origin_rank is None else origin_rank
    sa = lex_cmp(a if a_rank is None else a_rank, o_eff)
    sb = lex_cmp(b if b_rank is None else b_rank, o_eff)
    if sa == sb:
        return None
    if sa == 0 or sb == 0:
        # one endpoint exactly on the ray's line: a grazing hit at that
        # endpoint (only reachable through ranked corners; plain points on
        # the line are coordinate-equal to the origin and stay incident)
        pt, other = (a, b) if sa == 0 else (b, a)
        if pt == origin:
            return None
        dy = sign(pt[1] - origin[1])
        if dy != direction:
            return None
        return RayHit(pt[1], 1, pt, other, tag)
    dx = b[0] - a[0]
    if dx == 0:
        if rank is not None:
            return None  # parallel sheared lines never meet
        # both endpoints share origin's x with origin strictly between: the
        # origin would lie on the open segment, which callers must rule out
        raise ValueError("ray origin lies on a vertical segment interior")
    # intersection of the true vertical x = origin.x with line ab
    num = a[1] * dx + (origin[0] - a[0]) * (b[1] - a[1])
    den = dx
    if den < 0:
        num, den = -num, -den
    dy = sign(num - origin[1] * den)
    if dy == 0:
        raise ValueError("ray origin lies in a segment interior")
    if dy != direction:
        return None
    endpoint = other = None
    if a[0] == origin[0]:
        endpoint, other = a, b
    elif b[0] == origin[0]:
        endpoint, other = b, a
    return RayHit(num, den, endpoint, other, tag)


def closer_hit(h1: RayHit, h2: RayHit, direction: int) -> RayHit:
    """The hit reached first along the sheared ray (exact, including the
    shared-endpoint tie where both hits sit on one vertex of the line)."""
    c = h1.y_cmp(h2)
    if c != 0:
        return (h1 if c < 0 else h2) if direction == UP else (h1 if c > 0 else h2)
    # Equal ordinates: in a simple polygon this only happens when both
    # segments share the endpoint that lies on the vertical line.
    u1, u2 = h1.endpoint, h2.endpoint
    if u1 is None or u2 is None or u1 != u2:
        raise ValueError("coincident ray hits without a shared on-line endpoint")
    return h1 if orient(u1, h1.other, h2.other) < 0 else h2


def vertical_ray_hit(origin: Point, direction: int, a: Point, b: Point) -> Optional[Point]:
    """Exact first intersection of the vertical ray with one edge, or None."""
    hit = ray_hit_segment(origin, direction, a, b)
    return None if hit is None else hit.point(origin[0])


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """Is p on the closed segment ab (exact)?"""
    if orient(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Open segments ab and cd share exactly one interior point."""
    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)
    return d1 * d2 < 0 and d3 * d4 < 0


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed segments ab and cd share at least one point."""
    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and on_segment(a, c, d):
        return True
    if d2 == 0 and on_segment(b, c, d):
        return True
    if d3 == 0 and on_segment(c, a, b):
        return True
    if d4 == 0 and on_segment(d, a, b):
        return True
    return False


def signed_area2(points: Sequence[Point]):
    """Twice the shoelace area; positive for counterclockwise order."""
    total = 0
    n = len(points)
    for i in range(n):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def seg_param_cmp(a: Point, b: Point, p: Point, q: Point) -> int:
    """Order of two points p, q lying on segment ab, measured from a.

    Uses the sheared order along the segment direction so coincident
    coordinates on vertical segments still compare consistently.
    """
    c = lex_cmp(p, q)
    if c == 0:
        return 0
    return c if sheared_less(a, b) else -c


def ray_segment_intersection(origin: Point, direction: Vec, a: Point, b: Point,
                             include_origin: bool = False):
    """First intersection parameter of ray origin+t*direction with segment ab.

    Returns (t_num, t_den, point) with t_den > 0, or None.  t > 0 strictly
    unless include_origin.  Endpoint touches count as intersections.
    """
    rx, ry = direction
    sx, sy = b[0] - a[0], b[1] - a[1]
    denom = rx * sy - ry * sx
    qpx, qpy = a[0] - origin[0], a[1] - origin[1]
    if denom == 0:
        if qpx * ry - qpy * rx != 0:
            return None
        # collinear: candidate params of a and b along the ray
        best = None
        for pt in (a, b):
            tn = (pt[0] - origin[0]) * rx + (pt[1] - origin[1]) * ry
            td = rx * rx + ry * ry
            ok = tn > 0 or (include_origin and tn == 0)
            if ok and (best is None or tn * best[1] < best[0] * td):
                best = (tn, td, pt)
        return best
    t_num = qpx * sy - qpy * sx
    t_den = denom
    u_num = qpx * ry - qpy * rx
    u_den = denom
    if t_den < 0:
        t_num = -t_num
        t_den = -t_den
    if u_den < 0:
        u_num = -u_num
        u_den = -u_den
    if not (0 <= u_num <= u_den):
        return None
    if t_num < 0 or (t_num == 0 and not include_origin):
        return None
    if u_num == 0:
        pt = a
    elif u_num == u_den:
        pt = b
    else:
        u = rat(u_num, u_den)
        pt = (a[0] + u * sx, a[1] + u * sy)
    return (t_num, t_den, pt)
