"""Trapezoidal decomposition of a polygonal domain by axis-parallel cuts.

The decomposition with horizontal cuts splits the domain interior at
every vertex level into slabs and merges vertically adjacent cells that
share both bounding edges.  The result matches the classical cell
decomposition in which every vertex extends a maximal axis-parallel
chord through the interior: trapezoid boundaries at cut levels are
exactly those chords, and chord endpoints that are not domain vertices
are the Steiner points.  ``axis='v'`` computes the same structure with
vertical cuts by working in transposed coordinates.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction

from ..errors import NotInDomain
from .base import Point, merge_intervals, rat, RatLike
from .polygon import PolygonalDomain


@dataclass(frozen=True)
class Wall:
    """A full domain edge bounding trapezoids on one side, local coords.

    Never horizontal in local coordinates, so x is a function of y.
    """

    a: Point
    b: Point

    def slope(self) -> Fraction:
        return (self.b.x - self.a.x) / (self.b.y - self.a.y)

    def x_at(self, y: Fraction) -> Fraction:
        return self.a.x + (y - self.a.y) * self.slope()


@dataclass(frozen=True)
class Trapezoid:
    """A maximal cell: two horizontal sides, two wall segments (local).

    ``transposed`` records that local coordinates are the world's with x
    and y swapped; all public accessors speak world coordinates.
    """

    tid: int
    bottom: Fraction
    top: Fraction
    left: Wall
    right: Wall
    transposed: bool = False

    @classmethod
    def axis_aligned(cls, tid: int, x0: RatLike, y0: RatLike,
                     x1: RatLike, y1: RatLike) -> "Trapezoid":
        x0, y0, x1, y1 = rat(x0), rat(y0), rat(x1), rat(y1)
        return cls(tid, y0, y1,
                   Wall(Point(x0, y0), Point(x0, y1)),
                   Wall(Point(x1, y0), Point(x1, y1)))

    @classmethod
    def point(cls, tid: int, p: Point) -> "Trapezoid":
        wall = Wall(p, Point(p.x, p.y + 1))
        return cls(tid, p.y, p.y, wall, wall)

    def _to_local(self, p: Point) -> Point:
        return p.transposed() if self.transposed else p

    def _to_world(self, p: Point) -> Point:
        return p.transposed() if self.transposed else p

    def contains(self, p: Point) -> bool:
        q = self._to_local(p)
        if not self.bottom <= q.y <= self.top:
            return False
        return self.left.x_at(q.y) <= q.x <= self.right.x_at(q.y)

    def corners(self) -> list[Point]:
        """Distinct corner points in world coordinates."""
        locs = [
            Point(self.left.x_at(self.bottom), self.bottom),
            Point(self.right.x_at(self.bottom), self.bottom),
            Point(self.right.x_at(self.top), self.top),
            Point(self.left.x_at(self.top), self.top),
        ]
        out: list[Point] = []
        for p in locs:
            w = self._to_world(p)
            if w not in out:
                out.append(w)
        return out

    def membership_constraints(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        """Rows (ax, ay, b) with ax*x + ay*y <= b, world coordinates.

        Degenerate trapezoids (points, segments) come out as paired
        inequalities, so equality constraints need no special casing.
        """
        rows = [
            (Fraction(0), Fraction(-1), -self.bottom),
            (Fraction(0), Fraction(1), self.top),
        ]
        ml = self.left.slope()
        rows.append((Fraction(-1), ml, -(self.left.a.x - ml * self.left.a.y)))
        mr = self.right.slope()
        rows.append((Fraction(1), -mr, self.right.a.x - mr * self.right.a.y))
        if self.transposed:
            rows = [(ay, ax, b) for ax, ay, b in rows]
        return rows

    def interior_point(self) -> Point:
        ym = (self.bottom + self.top) / 2
        xm = (self.left.x_at(ym) + self.right.x_at(ym)) / 2
        return self._to_world(Point(xm, ym))


class TrapezoidalDecomposition:
    """Decomposition of a domain into maximal trapezoids.

    ``axis='h'`` cuts along horizontal lines, ``axis='v'`` along
    vertical ones.  Trapezoid ids index ``self.trapezoids`` and are
    assigned in a deterministic geometric order.
    """

    def __init__(self, domain: PolygonalDomain, axis: str = "h"):
        if axis not in ("h", "v"):
            raise ValueError("axis must be 'h' or 'v'")
        self.domain = domain
        self.axis = axis
        self._transposed = axis == "v"
        local = domain.transposed() if self._transposed else domain

        edges = [(a, b) for a, b in local.iter_edges() if a.y != b.y]
        self._levels = sorted({v.y for ring in local.all_rings() for v in ring})

        # slab soup: per slab, cells between consecutive crossing edges
        runs: dict[tuple[int, int], tuple[int, int]] = {}  # edge pair -> slab range
        finished: list[tuple[int, int, int, int]] = []  # (el, er, slab_lo, slab_hi)
        for si, (y0, y1) in enumerate(zip(self._levels, self._levels[1:])):
            ym = (y0 + y1) / 2
            crossing = [
                i for i, (a, b) in enumerate(edges)
                if min(a.y, b.y) <= y0 and max(a.y, b.y) >= y1
            ]
            crossing.sort(key=lambda i: _x_at(edges[i], ym))
            assert len(crossing) % 2 == 0
            cells = {
                (crossing[k], crossing[k + 1])
                for k in range(0, len(crossing), 2)
            }
            for key in list(runs):
                if key not in cells:
                    lo, hi = runs.pop(key)
                    finished.append((*key, lo, hi))
            for key in cells:
                if key in runs:
                    runs[key] = (runs[key][0], si)
                else:
                    runs[key] = (si, si)
        for key, (lo, hi) in runs.items():
            finished.append((*key, lo, hi))

        traps = [
            Trapezoid(0, self._levels[lo], self._levels[hi + 1],
                      Wall(*edges[el]), Wall(*edges[er]), self._transposed)
            for el, er, lo, hi in finished
        ]
        traps.sort(key=lambda t: (t.bottom, t.left.x_at(t.bottom),
                                  t.right.x_at(t.bottom), t.top))
        self.trapezoids = [
            Trapezoid(i, t.bottom, t.top, t.left, t.right, t.transposed)
            for i, t in enumerate(traps)
        ]

        # per slab, ids of trapezoids covering it (for point location)
        self._slab_members: list[list[int]] = [[] for _ in self._levels[:-1]]
        for t in self.trapezoids:
            lo = bisect_left(self._levels, t.bottom)
            hi = bisect_left(self._levels, t.top)
            for si in range(lo, hi):
                self._slab_members[si].append(t.tid)

        self._build_cuts()

    def _build_cuts(self) -> None:
        """Chords at cut levels and positive-overlap adjacency."""
        by_top: dict[Fraction, list[Trapezoid]] = {}
        by_bottom: dict[Fraction, list[Trapezoid]] = {}
        for t in self.trapezoids:
            by_top.setdefault(t.top, []).append(t)
            by_bottom.setdefault(t.bottom, []).append(t)
        self.adjacency: dict[int, set[int]] = {t.tid: set() for t in self.trapezoids}
        chords: list[tuple[Point, Point]] = []
        for y in self._levels[1:-1]:
            intervals = []
            for lower in by_top.get(y, ()):
                l0, r0 = lower.left.x_at(y), lower.right.x_at(y)
                for upper in by_bottom.get(y, ()):
                    lo = max(l0, upper.left.x_at(y))
                    hi = min(r0, upper.right.x_at(y))
                    if lo < hi:
                        intervals.append((lo, hi))
                        self.adjacency[lower.tid].add(upper.tid)
                        self.adjacency[upper.tid].add(lower.tid)
            for lo, hi in merge_intervals(intervals):
                chords.append((self._out(Point(lo, y)), self._out(Point(hi, y))))
        self.chords = chords

    def _out(self, p: Point) -> Point:
        return p.transposed() if self._transposed else p

    def steiner_points(self) -> list[Point]:
        """Chord endpoints that are not domain vertices."""
        verts = {v for ring in self.domain.all_rings() for v in ring}
        out = {p for chord in self.chords for p in chord if p not in verts}
        return sorted(out)

    def vertices(self) -> list[Point]:
        """All trapezoid corners, world coordinates, deduplicated."""
        out = {p for t in self.trapezoids for p in t.corners()}
        return sorted(out)

    def locate(self, p: Point) -> Trapezoid:
        """Containing trapezoid with the smallest id; closed containment."""
        q = p.transposed() if self._transposed else p
        if not self._levels or not self._levels[0] <= q.y <= self._levels[-1]:
            raise NotInDomain(f"{p} is outside the decomposed domain")
        lo = max(bisect_right(self._levels, q.y) - 1, 0)
        slabs = range(max(lo - 1, 0), min(lo + 1, len(self._slab_members)))
        best = None
        for si in slabs:
            for tid in self._slab_members[si]:
                t = self.trapezoids[tid]
                if t.contains(p) and (best is None or tid < best):
                    best = tid
        if best is None:
            raise NotInDomain(f"{p} is outside the decomposed domain")
        return self.trapezoids[best]

    def all_containing(self, p: Point) -> list[Trapezoid]:
        return [t for t in self.trapezoids if t.contains(p)]


def _x_at(edge: tuple[Point, Point], y: Fraction) -> Fraction:
    a, b = edge
    return a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y)
