"""Simple polygons with holes, validated and canonicalized exactly."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .base import (
    Point,
    pt,
    rat,
    RatLike,
    area2,
    on_segment,
    orient,
    point_in_ring,
    segment_intersection_points,
)

Ring = tuple[Point, ...]


def _clean_ring(ring: list[Point]) -> list[Point]:
    """Drop repeated and interior-collinear vertices until stable."""
    pts = list(ring)
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        out: list[Point] = []
        n = len(pts)
        for i, v in enumerate(pts):
            prev = pts[(i - 1) % n]
            nxt = pts[(i + 1) % n]
            if v == prev:
                changed = True
                continue
            if orient(prev, v, nxt) == 0 and on_segment(v, prev, nxt):
                changed = True
                continue
            out.append(v)
        pts = out
    return pts


def _rotate_to_min(ring: Ring) -> Ring:
    k = ring.index(min(ring))
    return ring[k:] + ring[:k]


def _edges(ring: Ring):
    return zip(ring, ring[1:] + ring[:1])


@dataclass(frozen=True)
class PolygonalDomain:
    """A simple polygon with zero or more pairwise-disjoint holes.

    Stored canonically: outer ring counterclockwise, holes clockwise,
    each ring rotated to start at its lexicographically smallest vertex.
    Instances are hashable and compare by shape.
    """

    outer: Ring
    holes: tuple[Ring, ...] = field(default=())

    @classmethod
    def from_rings(cls, outer, holes=()) -> "PolygonalDomain":
        def to_ring(raw) -> Ring:
            cleaned = _clean_ring([p if isinstance(p, Point) else pt(*p) for p in raw])
            if len(cleaned) < 3 or area2(cleaned) == 0:
                raise ValueError("ring degenerates to fewer than 3 corners")
            return tuple(cleaned)

        out = to_ring(outer)
        if area2(out) < 0:
            out = out[::-1]
        hs = []
        for raw in holes:
            h = to_ring(raw)
            if area2(h) > 0:
                h = h[::-1]
            hs.append(h)
        hs.sort(key=lambda r: min(r))
        dom = cls(_rotate_to_min(out), tuple(_rotate_to_min(h) for h in hs))
        dom._validate()
        return dom

    @classmethod
    def box(cls, x0: RatLike, y0: RatLike, x1: RatLike, y1: RatLike) -> "PolygonalDomain":
        x0, y0, x1, y1 = rat(x0), rat(y0), rat(x1), rat(y1)
        return cls.from_rings([pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)])

    def _validate(self) -> None:
        rings = self.all_rings()
        # each ring simple: non-adjacent edges disjoint, adjacent edges
        # meeting only at the shared vertex
        for ring in rings:
            n = len(ring)
            edges = list(_edges(ring))
            for i in range(n):
                for j in range(i + 1, n):
                    a, b = edges[i]
                    c, d = edges[j]
                    hits = segment_intersection_points(a, b, c, d)
                    adjacent = j == i + 1 or (i == 0 and j == n - 1)
                    if adjacent:
                        shared = b if j == i + 1 else a
                        if hits != [shared]:
                            raise ValueError(f"ring self-touches near {shared}")
                    elif hits:
                        raise ValueError(f"ring self-intersects near {hits[0]}")
        # ring boundaries pairwise disjoint
        for i in range(len(rings)):
            for j in range(i + 1, len(rings)):
                for a, b in _edges(rings[i]):
                    for c, d in _edges(rings[j]):
                        hits = segment_intersection_points(a, b, c, d)
                        if hits:
                            raise ValueError(f"rings touch near {hits[0]}")
        # holes strictly inside the outer ring and not nested
        for i, h in enumerate(self.holes):
            if point_in_ring(h[0], list(self.outer)) != 1:
                raise ValueError("hole is not inside the outer ring")
            for j, other in enumerate(self.holes):
                if i != j and point_in_ring(h[0], list(other)) == 1:
                    raise ValueError("holes are nested")

    def all_rings(self) -> list[Ring]:
        return [self.outer, *self.holes]

    def iter_edges(self):
        """All boundary edges over all rings, ring orientation preserved."""
        for ring in self.all_rings():
            yield from _edges(ring)

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [p.x for p in self.outer]
        ys = [p.y for p in self.outer]
        return min(xs), min(ys), max(xs), max(ys)

    def transposed(self) -> "PolygonalDomain":
        return PolygonalDomain.from_rings(
            [p.transposed() for p in self.outer],
            [[p.transposed() for p in h] for h in self.holes],
        )

    def translated(self, d: Point) -> "PolygonalDomain":
        return PolygonalDomain.from_rings(
            [p.plus(d) for p in self.outer],
            [[p.plus(d) for p in h] for h in self.holes],
        )

    def point_in_domain(self, p: Point) -> int:
        """1 strictly inside, 0 on the boundary, -1 outside."""
        r = point_in_ring(p, list(self.outer))
        if r <= 0:
            return r
        for hole in self.holes:
            rh = point_in_ring(p, list(hole))
            if rh == 1:
                return -1
            if rh == 0:
                return 0
        return 1

    def segment_inside_params(self, a: Point, b: Point) -> list[tuple[Fraction, Fraction]]:
        """Parameter intervals of segment ab lying in the closed domain.

        Parameters run over [0,1] with p(t) = a + t(b-a); returned
        intervals are disjoint and sorted.
        """
        if a == b:
            full = [(Fraction(0), Fraction(1))]
            return full if self.point_in_domain(a) >= 0 else []
        d = b.minus(a)
        axis_len = d.x * d.x + d.y * d.y

        def param(p: Point) -> Fraction:
            q = p.minus(a)
            return (q.x * d.x + q.y * d.y) / axis_len

        cuts = {Fraction(0), Fraction(1)}
        for e0, e1 in self.iter_edges():
            for p in segment_intersection_points(a, b, e0, e1):
                cuts.add(param(p))
        ts = sorted(cuts)
        inside = []
        for lo, hi in zip(ts, ts[1:]):
            mid = a.lerp(b, (lo + hi) / 2)
            if self.point_in_domain(mid) >= 0:
                inside.append((lo, hi))
        from .base import merge_intervals
        return merge_intervals(inside)

    def box_in_domain(self, center: Point, hx: Fraction, hy: Fraction) -> bool:
        """True iff the closed box center +- (hx, hy) lies in the closed domain."""
        if hx == 0 and hy == 0:
            return self.point_in_domain(center) >= 0
        if hx == 0 or hy == 0:
            raise ValueError("half-degenerate boxes are not supported")
        x0, x1 = center.x - hx, center.x + hx
        y0, y1 = center.y - hy, center.y + hy
        for a, b in self.iter_edges():
            if _segment_meets_open_box(a, b, x0, y0, x1, y1):
                return False
        # no boundary inside the open box, so the box is entirely on the
        # center's side of the boundary
        return self.point_in_domain(center) == 1


def _segment_meets_open_box(a: Point, b: Point,
                            x0: Fraction, y0: Fraction,
                            x1: Fraction, y1: Fraction) -> bool:
    """True iff closed segment ab intersects the open box (x0,x1) x (y0,y1)."""
    t_lo, t_hi = Fraction(0), Fraction(1)
    dx, dy = b.x - a.x, b.y - a.y
    for p, d, q0, q1 in ((a.x, dx, x0, x1), (a.y, dy, y0, y1)):
        if d == 0:
            if not (q0 <= p <= q1):
                return False
        else:
            ta = (q0 - p) / d
            tb = (q1 - p) / d
            if ta > tb:
                ta, tb = tb, ta
            t_lo = max(t_lo, ta)
            t_hi = min(t_hi, tb)
            if t_lo > t_hi:
                return False
    # clipped subsegment lies in the closed box; it meets the open box
    # iff its midpoint is strictly inside
    tm = (t_lo + t_hi) / 2
    mx, my = a.x + tm * dx, a.y + tm * dy
    return x0 < mx < x1 and y0 < my < y1
