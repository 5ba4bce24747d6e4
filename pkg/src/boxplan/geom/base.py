"""Rational points, segment predicates, and the shared separation-gap kernel.

All coordinates are ``fractions.Fraction``.  ``rat`` is the single entry
point for turning user input into coordinates; it rejects floats so that
binary rounding error can never leak into an exact computation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple

F0 = Fraction(0)
F1 = Fraction(1)
FHALF = Fraction(1, 2)

RatLike = Fraction | int | str


def rat(value: RatLike) -> Fraction:
    """Convert ``value`` to an exact rational.

    Accepts ints, Fractions and strings like ``"3/2"`` or ``"0.25"``
    (decimal strings are exact).  Floats and bools are rejected.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact coordinate {value!r}; pass int, Fraction or str")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    # NamedTuple inherits tuple.__add__ (concatenation), so arithmetic
    # gets explicit names instead of operators.
    def plus(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def minus(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, factor: Fraction | int) -> "Point":
        return Point(self.x * factor, self.y * factor)

    def transposed(self) -> "Point":
        return Point(self.y, self.x)

    def lerp(self, other: "Point", t: Fraction) -> "Point":
        return Point(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def pt(x: RatLike, y: RatLike) -> Point:
    return Point(rat(x), rat(y))


def l1_dist(a: Point, b: Point) -> Fraction:
    return abs(a.x - b.x) + abs(a.y - b.y)


def linf_dist(a: Point, b: Point) -> Fraction:
    return max(abs(a.x - b.x), abs(a.y - b.y))


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right, 0 collinear."""
    v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (v > 0) - (v < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff ``p`` lies on the closed segment ``ab``."""
    if orient(a, b, p) != 0:
        return False
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed-segment intersection test, degenerate cases included."""
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    return (
        (o1 == 0 and on_segment(c, a, b))
        or (o2 == 0 and on_segment(d, a, b))
        or (o3 == 0 and on_segment(a, c, d))
        or (o4 == 0 and on_segment(b, c, d))
    )


def segment_intersection_points(a: Point, b: Point, c: Point, d: Point) -> list[Point]:
    """Corner points of the intersection of closed segments ``ab`` and ``cd``.

    A transversal crossing yields one point; collinear overlap yields the
    overlap's endpoints (possibly equal); disjoint segments yield [].
    """
    if a == b:
        return [a] if on_segment(a, c, d) else []
    if c == d:
        return [c] if on_segment(c, a, b) else []
    r = b.minus(a)
    s = d.minus(c)
    denom = r.x * s.y - r.y * s.x
    if denom != 0:
        qp = c.minus(a)
        t = (qp.x * s.y - qp.y * s.x) / denom
        u = (qp.x * r.y - qp.y * r.x) / denom
        if F0 <= t <= F1 and F0 <= u <= F1:
            return [a.plus(r.scaled(t))]
        return []
    # parallel
    if orient(a, b, c) != 0:
        return []
    # collinear: order both segments along the shared direction
    axis = r

    def key(p: Point) -> Fraction:
        return p.x * axis.x + p.y * axis.y

    lo1, hi1 = sorted((a, b), key=key)
    lo2, hi2 = sorted((c, d), key=key)
    lo = max(lo1, lo2, key=key)
    hi = min(hi1, hi2, key=key)
    if key(lo) > key(hi):
        return []
    if lo == hi:
        return [lo]
    return [lo, hi]


def _gap_candidates(u0: Fraction, du: Fraction, v0: Fraction, dv: Fraction,
                    su: Fraction, sv: Fraction) -> list[Fraction]:
    """Parameter values in [0,1] covering every breakpoint of the gap function."""
    ts = {F0, F1}
    if du != 0:
        t = -u0 / du
        if F0 < t < F1:
            ts.add(t)
    if dv != 0:
        t = -v0 / dv
        if F0 < t < F1:
            ts.add(t)
    for eu in (1, -1):
        for ev in (1, -1):
            denom = eu * du - ev * dv
            if denom == 0:
                continue
            t = (ev * v0 - eu * u0 + su - sv) / denom
            if F0 < t < F1:
                ts.add(t)
    return sorted(ts)


def min_gap_on_segment(u0: Fraction, u1: Fraction, v0: Fraction, v1: Fraction,
                       su: Fraction, sv: Fraction) -> tuple[Fraction, Fraction]:
    """Minimum of g(t) = max(|u(t)| - su, |v(t)| - sv) for t in [0,1].

    u and v interpolate linearly between their 0 and 1 values.  Returns
    (min value, a t attaining it).  g is convex piecewise linear, so the
    minimum sits at an interval endpoint or a breakpoint.
    """
    du = u1 - u0
    dv = v1 - v0

    def g(t: Fraction) -> Fraction:
        return max(abs(u0 + t * du) - su, abs(v0 + t * dv) - sv)

    best_t = F0
    best = g(F0)
    for t in _gap_candidates(u0, du, v0, dv, su, sv):
        val = g(t)
        if val < best:
            best, best_t = val, t
    return best, best_t


def violation_onset(u0: Fraction, u1: Fraction, v0: Fraction, v1: Fraction,
                    su: Fraction, sv: Fraction) -> Fraction | None:
    """Infimum of { t in [0,1] : g(t) < 0 }, or None if the gap stays >= 0.

    Same gap function as ``min_gap_on_segment``.  Touching (g == 0) is not
    a violation, so an onset can equal a time where g itself is zero.
    """
    du = u1 - u0
    dv = v1 - v0

    def g(t: Fraction) -> Fraction:
        return max(abs(u0 + t * du) - su, abs(v0 + t * dv) - sv)

    cands = _gap_candidates(u0, du, v0, dv, su, sv)
    vals = [g(t) for t in cands]
    if min(vals) >= 0:
        return None
    if vals[0] < 0:
        return cands[0]
    for (ta, ga), (tb, gb) in zip(zip(cands, vals), zip(cands[1:], vals[1:])):
        if gb < 0 <= ga:
            # g is linear between adjacent candidates
            return ta + (tb - ta) * ga / (ga - gb)
    raise AssertionError("sign change without bracketing candidates")


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """CCW convex hull (monotone chain), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq: list[Point]) -> list[Point]:
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    return lower[:-1] + upper[:-1]


def area2(ring: Iterable[Point]) -> Fraction:
    """Twice the signed area of a closed ring (positive when CCW)."""
    ring = list(ring)
    total = F0
    for a, b in zip(ring, ring[1:] + ring[:1]):
        total += a.x * b.y - a.y * b.x
    return total


def point_in_ring(p: Point, ring: list[Point]) -> int:
    """1 strictly inside, 0 on the boundary, -1 strictly outside.

    Crossing-parity test with the half-open edge rule, so it is
    orientation independent.
    """
    for a, b in zip(ring, ring[1:] + ring[:1]):
        if on_segment(p, a, b):
            return 0
    inside = False
    for a, b in zip(ring, ring[1:] + ring[:1]):
        if (a.y > p.y) != (b.y > p.y):
            xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if xi > p.x:
                inside = not inside
    return 1 if inside else -1


def merge_intervals(intervals: Iterable[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Union of closed intervals as a sorted list of disjoint intervals.

    Touching intervals merge.  Empty (a > b) inputs are dropped.
    """
    items = sorted((a, b) for a, b in intervals if a <= b)
    out: list[tuple[Fraction, Fraction]] = []
    for a, b in items:
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return out


def complement_intervals(window: tuple[Fraction, Fraction],
                         intervals: Iterable[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Closure of window minus the given intervals, as disjoint intervals."""
    lo, hi = window
    out: list[tuple[Fraction, Fraction]] = []
    cur = lo
    for a, b in merge_intervals(intervals):
        a = max(a, lo)
        b = min(b, hi)
        if a > b:
            continue
        if a > cur:
            out.append((cur, a))
        cur = max(cur, b)
    if cur < hi:
        out.append((cur, hi))
    return out
