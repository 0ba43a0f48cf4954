"""Polygon ingestion and the text formats shared by the CLI.

File format: line 1 holds n, lines 2..n+1 hold "x y" with signed decimal
integer coordinates, vertices in clockwise order.  Validation rejects
counterclockwise input (with guidance), duplicate vertices and self
intersections; the simplicity check is oracle-side and deliberately
unrestricted in memory.
"""

from __future__ import annotations

import io
from typing import Iterable, List, Sequence, Tuple

from .geometry import rat, segments_intersect, signed_area2


class PolygonError(ValueError):
    pass


class Polygon:
    """Read-only clockwise vertex sequence.

    Raw indexing is uncounted; algorithms under a workspace budget go through
    :meth:`vertex` / :meth:`edge` with a run so every access is ledgered.
    """

    __slots__ = ("vertices", "n")

    def __init__(self, vertices: Sequence[Tuple[int, int]], validate: bool = True,
                 check_simple: bool = True):
        self.vertices = tuple((int(x), int(y)) for x, y in vertices)
        self.n = len(self.vertices)
        if validate:
            self._validate(check_simple)

    def _validate(self, check_simple: bool) -> None:
        if self.n < 3:
            raise PolygonError("polygon needs at least 3 vertices")
        if len(set(self.vertices)) != self.n:
            raise PolygonError("duplicate vertices")
        if check_simple:
            violation = find_self_intersection(self.vertices)
            if violation is not None:
                raise PolygonError(
                    f"polygon is not simple: edges {violation[0]} and "
                    f"{violation[1]} intersect"
                )
        area2 = signed_area2(self.vertices)
        if area2 == 0:
            raise PolygonError("degenerate polygon (zero area)")
        if area2 > 0:
            raise PolygonError(
                "vertices are in counterclockwise order; reverse them to get "
                "the required clockwise order"
            )

    def vertex(self, i: int, run=None) -> Tuple[int, int]:
        if run is not None:
            run.read()
        return self.vertices[i % self.n]

    def edge(self, i: int, run=None):
        if run is not None:
            run.read(2)
        i %= self.n
        return self.vertices[i], self.vertices[(i + 1) % self.n]

    def area2(self) -> int:
        return -signed_area2(self.vertices)  # positive for clockwise input

    def __len__(self) -> int:
        return self.n


def find_self_intersection(vertices: Sequence[Tuple[int, int]]):
    """First pair of non-adjacent edges that touch, or None.  Oracle-side
    (Theta(n^2) pairwise with a numpy fast path for large inputs)."""
    n = len(vertices)
    if n > 256:
        try:
            return _find_self_intersection_numpy(vertices)
        except ImportError:  # pragma: no cover
            pass
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            c, d = vertices[j], vertices[(j + 1) % n]
            if segments_intersect(a, b, c, d):
                return (i, j)
    return None


def _find_self_intersection_numpy(vertices):
    import numpy as np

    n = len(vertices)
    pts = np.asarray(vertices, dtype=np.int64)
    p1 = pts
    p2 = np.roll(pts, -1, axis=0)
    block = 1024
    for i0 in range(0, n, block):
        i1 = min(i0 + block, n)
        ai = p1[i0:i1]
        bi = p2[i0:i1]
        for j0 in range(i0, n, block):
            j1 = min(j0 + block, n)
            aj = p1[j0:j1]
            bj = p2[j0:j1]
            hit = _block_intersections(ai, bi, i0, aj, bj, j0, n)
            if hit is not None:
                return hit
    return None


def _block_intersections(ai, bi, i0, aj, bj, j0, n):
    import numpy as np

    axi = ai[:, 0][:, None]
    ayi = ai[:, 1][:, None]
    bxi = bi[:, 0][:, None]
    byi = bi[:, 1][:, None]
    axj = aj[:, 0][None, :]
    ayj = aj[:, 1][None, :]
    bxj = bj[:, 0][None, :]
    byj = bj[:, 1][None, :]

    def orient3(px, py, qx, qy, rx, ry):
        return (qx - px) * (ry - py) - (qy - py) * (rx - px)

    d1 = orient3(axj, ayj, bxj, byj, axi, ayi)
    d2 = orient3(axj, ayj, bxj, byj, bxi, byi)
    d3 = orient3(axi, ayi, bxi, byi, axj, ayj)
    d4 = orient3(axi, ayi, bxi, byi, bxj, byj)

    proper = (np.sign(d1) * np.sign(d2) < 0) & (np.sign(d3) * np.sign(d4) < 0)

    def on_seg(px, py, qx, qy, rx, ry, d):
        return ((d == 0)
                & (np.minimum(px, qx) <= rx) & (rx <= np.maximum(px, qx))
                & (np.minimum(py, qy) <= ry) & (ry <= np.maximum(py, qy)))

    touch = (on_seg(axj, ayj, bxj, byj, axi, ayi, d1)
             | on_seg(axj, ayj, bxj, byj, bxi, byi, d2)
             | on_seg(axi, ayi, bxi, byi, axj, ayj, d3)
             | on_seg(axi, ayi, bxi, byi, bxj, byj, d4))

    cand = proper | touch
    ii = np.arange(i0, i0 + ai.shape[0])[:, None]
    jj = np.arange(j0, j0 + aj.shape[0])[None, :]
    adjacent = (ii == jj) | ((ii + 1) % n == jj) | ((jj + 1) % n == ii)
    cand &= ~adjacent & (ii < jj)
    if cand.any():
        i, j = np.argwhere(cand)[0]
        return (int(i + i0), int(j + j0))
    return None


def load_polygon(source) -> Polygon:
    """Parse and validate a polygon from a file object, path or string."""
    if isinstance(source, (str, bytes)):
        try:
            with open(source, "r") as fp:
                return load_polygon(fp)
        except FileNotFoundError:
            raise
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode()
    else:
        raise PolygonError(f"cannot read polygon from {type(source)!r}")
    tokens = text.split()
    if not tokens:
        raise PolygonError("empty polygon file")
    try:
        n = int(tokens[0])
        coords = [int(t) for t in tokens[1:]]
    except ValueError as exc:
        raise PolygonError(f"bad token in polygon file: {exc}") from exc
    if len(coords) != 2 * n:
        raise PolygonError(f"expected {2 * n} coordinates for n={n}, got {len(coords)}")
    vertices = [(coords[2 * i], coords[2 * i + 1]) for i in range(n)]
    return Polygon(vertices)


def dump_polygon(poly: Polygon, fp) -> None:
    fp.write(f"{poly.n}\n")
    for x, y in poly.vertices:
        fp.write(f"{x} {y}\n")


def format_point(p) -> str:
    """Exact textual form: ints plain, non-integers as num/den."""
    out = []
    for c in p:
        if isinstance(c, int):
            out.append(str(c))
        else:
            num, den = c.numerator, c.denominator
            out.append(str(num) if den == 1 else f"{num}/{den}")
    return " ".join(out)


def parse_coord(text: str):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return rat(int(num), int(den))
    if "." in text:
        # decimal input: keep it exact
        whole, frac = text.split(".")
        scale = 10 ** len(frac)
        sign = -1 if whole.startswith("-") else 1
        mag = abs(int(whole or "0")) * scale + int(frac or "0")
        value = rat(sign * mag, scale)
        return int(value) if value.denominator == 1 else value
    return int(text)


def parse_point(text: str):
    parts = text.replace(",", " ").split()
    if len(parts) != 2:
        raise PolygonError(f"cannot parse point from {text!r}")
    return (parse_coord(parts[0]), parse_coord(parts[1]))
