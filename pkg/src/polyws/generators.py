"""Deterministic polygon corpus generators.

All randomness flows from one 64-bit seed through splitmix64 (state s:
s += 0x9E3779B97F4A7C15; z = s; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^= z >> 31), so a corpus is
reproducible from (kind, n, seed) alone.

Generators are corpus tooling: they do not run under a workspace budget.
"""

from __future__ import annotations

from typing import List, Tuple

from .geometry import sign, signed_area2, vcross
from .polygon import Polygon, find_self_intersection

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return (z ^ (z >> 31)) & MASK64

    def below(self, bound: int) -> int:
        """Uniform in [0, bound) by rejection (bound <= 2^63)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = MASK64 - (MASK64 % bound) - 1
        while True:
            v = self.next()
            if v <= limit:
                return v % bound

    def range(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)


def generate_polygon(kind: str, n: int, seed: int) -> Polygon:
    if n < 3:
        raise ValueError("n must be at least 3")
    if kind == "convex":
        verts = _convex(n, seed)
    elif kind == "spiral":
        verts = _spiral(n, seed)
    elif kind == "comb":
        verts = _comb(n, seed)
    elif kind == "random2opt":
        verts = _random2opt(n, seed)
    else:
        raise ValueError(f"unknown polygon kind {kind!r}")
    if signed_area2(verts) > 0:
        verts.reverse()
    return Polygon(verts, validate=True, check_simple=(n <= 4096 or kind == "random2opt"))


def _convex(n: int, seed: int) -> List[Tuple[int, int]]:
    """Valtr-style: pair up signed coordinate differences, sort the vectors by
    angle and walk them.  Strictly convex because parallel vectors are merged
    and the draw is retried until exactly n survive."""
    rng = SplitMix64((seed << 8) ^ 0xC0)
    span = max(16 * n, 1024)
    for _ in range(64):
        xs = sorted(rng.below(span) for _ in range(n))
        ys = sorted(rng.below(span) for _ in range(n))
        dx = _pair_diffs(xs, rng)
        dy = _pair_diffs(ys, rng)
        rng_order = [rng.next() for _ in dy]
        dy = [d for _, d in sorted(zip(rng_order, dy))]
        vecs = [(a, b) for a, b in zip(dx, dy) if (a, b) != (0, 0)]
        vecs.sort(key=_angle_key)
        merged = []
        for v in vecs:
            if merged and vcross(merged[-1], v) == 0 and _angle_key(merged[-1])[0] == _angle_key(v)[0]:
                merged[-1] = (merged[-1][0] + v[0], merged[-1][1] + v[1])
            else:
                merged.append(v)
        if len(merged) != n:
            continue
        pts = []
        x = y = 0
        for vx, vy in merged:
            pts.append((x, y))
            x += vx
            y += vy
        if len(set(pts)) == n and signed_area2(pts) != 0:
            return pts
    raise RuntimeError("convex generator failed to converge")


def _pair_diffs(values, rng) -> List[int]:
    lo, hi = values[0], values[-1]
    inner = values[1:-1]
    chain1, chain2 = [lo], [lo]
    for v in inner:
        (chain1 if rng.next() & 1 else chain2).append(v)
    chain1.append(hi)
    chain2.append(hi)
    diffs = [b - a for a, b in zip(chain1, chain1[1:])]
    diffs += [a - b for a, b in zip(chain2, chain2[1:])]
    return diffs


def _angle_key(v):
    half = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    class _K:
        __slots__ = ("h", "v")

        def __init__(self, h, vec):
            self.h = h
            self.v = vec

        def __lt__(self, other):
            if self.h != other.h:
                return self.h < other.h
            return vcross(self.v, other.v) > 0

        def __eq__(self, other):
            return self.h == other.h and vcross(self.v, other.v) == 0

    return (half, _K(half, v))


def _spiral(n: int, seed: int) -> List[Tuple[int, int]]:
    """Spiral-mouth polygon: horizontal exterior slots wind in from the east
    in alternating long/short depths, with jogged wall pieces between the
    long tips on the west side.

    The long slot tips carry extensions that pile up on one winding cell,
    which is exactly the configuration that exercises the third subdivision
    step (triple-separating extensions)."""
    if n < 28:
        raise ValueError("spiral polygons need n >= 28")
    rng = SplitMix64((seed << 8) ^ 0x51)
    k = max(2, (n - 4) // 12)
    long_x = 1 + rng.below(2)    # deep slot tips
    jog_x = 3 + rng.below(2)     # west-wall jog between long tips
    short_x = 5 + rng.below(3)   # shallow slot tips
    east = 36 + 2 * rng.below(5)
    height = 16 * k + 2
    pts: List[Tuple[int, int]] = [(0, 0)]
    for j in range(k):
        pts += [(0, 16 * j + 10), (jog_x, 16 * j + 10),
                (jog_x, 16 * j + 12), (0, 16 * j + 12)]
    pts += [(0, height), (east, height)]
    for j in reversed(range(k)):
        pts += [(east, 16 * j + 14), (short_x, 16 * j + 14),
                (short_x, 16 * j + 10), (east, 16 * j + 10),
                (east, 16 * j + 6), (long_x, 16 * j + 6),
                (long_x, 16 * j + 2), (east, 16 * j + 2)]
    pts.append((east, 0))
    verts = _dedupe_consecutive(pts)
    verts = _pad_to(verts, n)
    return verts


def _comb(n: int, seed: int) -> List[Tuple[int, int]]:
    """Spine along the bottom with long vertical teeth of jittered heights."""
    rng = SplitMix64((seed << 8) ^ 0xC3)
    teeth = max(1, (n - 2) // 4)
    base_h = 8 * teeth
    pts: List[Tuple[int, int]] = [(0, 0)]
    x = 0
    for _ in range(teeth):
        h = base_h + rng.range(-teeth, teeth) * 4
        pts.append((x, h))        # tooth tip (left wall top)
        pts.append((x + 2, h))    # tooth tip (right wall top)
        pts.append((x + 2, 4))    # back down to the gap floor
        pts.append((x + 4, 4))    # across the gap
        x += 4
    pts.append((x + 2, 0))
    verts = _dedupe_consecutive(pts)
    verts = _pad_to(verts, n)
    return verts


def _dedupe_consecutive(pts):
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _pad_to(verts: List[Tuple[int, int]], n: int) -> List[Tuple[int, int]]:
    """Insert extra vertices on the longest edges until len == n.

    Scales coordinates up first so subdivision points stay integral and can
    be nudged off the edge line without creating crossings.
    """
    if len(verts) > n:
        raise ValueError(f"construction needs at least {len(verts)} vertices")
    scale = 8
    verts = [(x * scale, y * scale) for x, y in verts]
    extra = n - len(verts)
    if extra == 0:
        return verts
    inward = 1 if signed_area2(verts) < 0 else -1  # interior right of cw edges
    m = len(verts)
    lengths = []
    for i in range(m):
        a, b = verts[i], verts[(i + 1) % m]
        lengths.append(abs(b[0] - a[0]) + abs(b[1] - a[1]))
    total = sum(lengths)
    # largest-remainder apportionment of the extra vertices over the edges
    shares = [(extra * L) // total for L in lengths]
    rem = extra - sum(shares)
    order = sorted(range(m), key=lambda i: (extra * lengths[i]) % total, reverse=True)
    for i in order[:rem]:
        shares[i] += 1
    out = []
    for i in range(m):
        a, b = verts[i], verts[(i + 1) % m]
        out.append(a)
        k = shares[i]
        dx, dy = b[0] - a[0], b[1] - a[1]
        nx, ny = inward * sign(dy), -inward * sign(dx)
        seen = {a, b}
        for j in range(1, k + 1):
            p = (a[0] + dx * j // (k + 1) + nx, a[1] + dy * j // (k + 1) + ny)
            if p in seen:  # extremely short edge; fall back to the raw point
                p = (a[0] + dx * j // (k + 1), a[1] + dy * j // (k + 1))
            seen.add(p)
            out.append(p)
    return out


def _random2opt(n: int, seed: int) -> List[Tuple[int, int]]:
    """Random distinct points, toured in Hilbert-curve order, then untangled
    by repeated crossing-removal (2-opt reversal) swaps until simple."""
    rng = SplitMix64((seed << 8) ^ 0x20)
    order = 1
    while (1 << (2 * order)) < 16 * n:
        order += 1
    side = 1 << order
    pts = set()
    while len(pts) < n:
        pts.add((rng.below(side), rng.below(side)))
    tour = sorted(pts, key=lambda p: _hilbert_d(order, p[0], p[1]))
    tour = _untangle(tour, rng, side)
    return tour


def _hilbert_d(order: int, x: int, y: int) -> int:
    d = 0
    s = 1 << (order - 1)
    while s > 0:
        rx = 1 if (x & s) > 0 else 0
        ry = 1 if (y & s) > 0 else 0
        d += s * s * ((3 * rx) ^ ry)
        if ry == 0:
            if rx == 1:
                x = s - 1 - x
                y = s - 1 - y
            x, y = y, x
        s >>= 1
    return d


def _untangle(tour: List[Tuple[int, int]], rng: SplitMix64, side: int,
              max_rounds: int = 10_000) -> List[Tuple[int, int]]:
    for _ in range(max_rounds):
        bad = find_self_intersection(tour)
        if bad is None:
            return tour
        i, j = bad
        a, b = tour[i], tour[(i + 1) % len(tour)]
        c, d = tour[j], tour[(j + 1) % len(tour)]
        from .geometry import segments_properly_cross

        if segments_properly_cross(a, b, c, d):
            # classic 2-opt: reversing the middle chunk removes the crossing
            # and strictly shortens the tour, so this terminates
            tour[i + 1:j + 1] = reversed(tour[i + 1:j + 1])
        else:
            # collinear touch: re-draw one offending point
            k = (i + 1) % len(tour)
            used = set(tour)
            while True:
                p = (rng.below(side), rng.below(side))
                if p not in used:
                    tour[k] = p
                    break
    raise RuntimeError("2-opt untangling did not converge")
