"""Inner box offset of a polygonal domain, computed exactly.

``inner_minkowski(S, hx, hy)`` returns the set of box centers whose
closed (2hx x 2hy) box fits inside the closed domain, as a list of
polygonal components.  A center qualifies iff it lies strictly inside S
and outside the open forbidden zone of every boundary edge, where the
zone of edge e is e Minkowski-summed with the open box.  The computation
is a vertical slab sweep over the arrangement of all domain and zone
edges, followed by boundary stitching.

Lower-dimensional slivers of the true offset (centers that fit only
along a segment or at a single point, as in an exact-width corridor)
are dropped: only full-dimensional components are reported.  Offsets
whose components touch at a single point come back as separate
components.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .base import (
    Point,
    convex_hull,
    area2,
    merge_intervals,
    segment_intersection_points,
)
from .polygon import PolygonalDomain

_DOM = -1  # owner id of the domain boundary; zones use their edge index


def _forbidden_zones(domain: PolygonalDomain, hx: Fraction, hy: Fraction) -> list[list[Point]]:
    zones = []
    for a, b in domain.iter_edges():
        corners = [
            Point(p.x + sx * hx, p.y + sy * hy)
            for p in (a, b)
            for sx in (1, -1)
            for sy in (1, -1)
        ]
        zones.append(convex_hull(corners))
    return zones


def _split_all(tagged: list[tuple[Point, Point, int]]) -> dict[tuple[Point, Point], set[int]]:
    """Split segments at all pairwise intersections, merging duplicates.

    Returns unordered-endpoint pieces mapped to the set of owners whose
    boundary runs along the piece.
    """
    n = len(tagged)
    cut_points: list[set[Point]] = [set((a, b)) for a, b, _ in tagged]
    for i in range(n):
        a, b, _ = tagged[i]
        for j in range(i + 1, n):
            c, d, _ = tagged[j]
            # cheap bbox reject
            if (max(a.x, b.x) < min(c.x, d.x) or max(c.x, d.x) < min(a.x, b.x)
                    or max(a.y, b.y) < min(c.y, d.y) or max(c.y, d.y) < min(a.y, b.y)):
                continue
            for p in segment_intersection_points(a, b, c, d):
                cut_points[i].add(p)
                cut_points[j].add(p)
    pieces: dict[tuple[Point, Point], set[int]] = {}
    for (a, b, owner), cuts in zip(tagged, cut_points):
        d = b.minus(a)
        ordered = sorted(cuts, key=lambda p: p.minus(a).x * d.x + p.minus(a).y * d.y)
        for u, v in zip(ordered, ordered[1:]):
            key = (u, v) if u <= v else (v, u)
            pieces.setdefault(key, set()).add(owner)
    return pieces


class _Span:
    """One non-vertical piece crossing a slab, with cached evaluation."""

    __slots__ = ("a", "b", "owners", "slope")

    def __init__(self, a: Point, b: Point, owners: set[int]):
        self.a = a
        self.b = b
        self.owners = owners
        self.slope = (b.y - a.y) / (b.x - a.x)

    def y_at(self, x: Fraction) -> Fraction:
        return self.a.y + (x - self.a.x) * self.slope


def inner_minkowski(domain: PolygonalDomain, hx: Fraction, hy: Fraction) -> list[PolygonalDomain]:
    """Components of the inner box offset, sorted by smallest vertex."""
    if hx <= 0 or hy <= 0:
        raise ValueError("box half-extents must be positive")
    tagged = [(a, b, _DOM) for a, b in domain.iter_edges()]
    for idx, zone in enumerate(_forbidden_zones(domain, hx, hy)):
        for a, b in zip(zone, zone[1:] + zone[:1]):
            tagged.append((a, b, idx))
    pieces = _split_all(tagged)

    spans: list[_Span] = []
    xs: set[Fraction] = set()
    for (a, b), owners in pieces.items():
        xs.add(a.x)
        xs.add(b.x)
        if a.x != b.x:
            spans.append(_Span(a, b, owners))
    slab_xs = sorted(xs)

    directed: list[tuple[Point, Point]] = []  # boundary pieces, interior on left
    # in-intervals per slab evaluated at its left and right lines
    at_line_left: list[list[tuple[Fraction, Fraction]]] = []
    at_line_right: list[list[tuple[Fraction, Fraction]]] = []

    for xl, xr in zip(slab_xs, slab_xs[1:]):
        xm = (xl + xr) / 2
        crossing = sorted(
            (s for s in spans if s.a.x <= xm <= s.b.x or s.b.x <= xm <= s.a.x),
            key=lambda s: s.y_at(xm),
        )
        left_ints: list[tuple[Fraction, Fraction]] = []
        right_ints: list[tuple[Fraction, Fraction]] = []
        inside_dom = False
        zone_depth = 0
        zone_parity: set[int] = set()
        below_in = False
        prev_span: _Span | None = None
        for s in crossing:
            if _DOM in s.owners:
                inside_dom = not inside_dom
            for owner in s.owners:
                if owner == _DOM:
                    continue
                if owner in zone_parity:
                    zone_parity.remove(owner)
                    zone_depth -= 1
                else:
                    zone_parity.add(owner)
                    zone_depth += 1
            above_in = inside_dom and zone_depth == 0
            if above_in != below_in:
                p_l = Point(xl, s.y_at(xl))
                p_r = Point(xr, s.y_at(xr))
                # interior on the left of the travel direction: eastward
                # when the region is above, westward when it is below
                directed.append((p_l, p_r) if above_in else (p_r, p_l))
            if above_in:
                prev_span = s
            elif below_in and prev_span is not None:
                left_ints.append((prev_span.y_at(xl), s.y_at(xl)))
                right_ints.append((prev_span.y_at(xr), s.y_at(xr)))
            below_in = above_in
        at_line_left.append(merge_intervals(left_ints))
        at_line_right.append(merge_intervals(right_ints))

    # vertical boundary pieces on each slab line: covered on one side only
    n_slabs = len(slab_xs) - 1
    for k, x in enumerate(slab_xs):
        west = at_line_right[k - 1] if 0 < k else []
        east = at_line_left[k] if k < n_slabs else []
        for lo, hi, west_in in _interval_symmetric_difference(west, east):
            if lo == hi:
                continue
            a, b = Point(x, lo), Point(x, hi)
            # interior west: walk up; interior east: walk down
            directed.append((a, b) if west_in else (b, a))

    rings = _stitch_rings(directed)
    return _assemble_components(rings)


def _interval_symmetric_difference(
    left: list[tuple[Fraction, Fraction]],
    right: list[tuple[Fraction, Fraction]],
) -> Iterator[tuple[Fraction, Fraction, bool]]:
    """Pieces covered by exactly one side. Yields (lo, hi, from_left)."""
    events: list[Fraction] = sorted(
        {y for a, b in left for y in (a, b)} | {y for a, b in right for y in (a, b)}
    )

    def covered(ints: list[tuple[Fraction, Fraction]], lo: Fraction, hi: Fraction) -> bool:
        return any(a <= lo and hi <= b for a, b in ints)

    for lo, hi in zip(events, events[1:]):
        in_l = covered(left, lo, hi)
        in_r = covered(right, lo, hi)
        if in_l != in_r:
            yield lo, hi, in_l


def _stitch_rings(directed: list[tuple[Point, Point]]) -> list[list[Point]]:
    """Chain directed boundary edges into closed rings.

    At a vertex with several outgoing edges the walk takes the edge with
    the smallest clockwise angle from the reversed arrival direction,
    which splits pinch vertices into separate simple loops.
    """
    outgoing: dict[Point, list[int]] = {}
    for i, (a, _) in enumerate(directed):
        outgoing.setdefault(a, []).append(i)

    def cw_key(ref: Point, d: Point) -> tuple[int, Fraction]:
        cross = ref.x * d.y - ref.y * d.x
        dot = ref.x * d.x + ref.y * d.y
        if cross < 0:
            return 0, dot / cross
        if cross == 0 and dot < 0:
            return 1, Fraction(0)
        if cross > 0:
            return 2, dot / cross
        return 3, Fraction(0)

    used = [False] * len(directed)
    rings: list[list[Point]] = []
    for start in range(len(directed)):
        if used[start]:
            continue
        ring: list[Point] = []
        cur = start
        while not used[cur]:
            used[cur] = True
            a, b = directed[cur]
            ring.append(a)
            ref = a.minus(b)  # reversed arrival direction at b
            nxts = outgoing.get(b, ())
            if not nxts:
                raise AssertionError(f"boundary walk dead-ends at {b}")
            # successor depends on geometry only, never on traversal order
            cur = min(nxts, key=lambda i: cw_key(ref, directed[i][1].minus(directed[i][0])))
        if directed[cur][0] != ring[0] or cur != start:
            raise AssertionError("boundary walk closed on the wrong edge")
        rings.append(ring)
    return rings


def _assemble_components(rings: list[list[Point]]) -> list[PolygonalDomain]:
    from .base import point_in_ring

    outers: list[list[Point]] = []
    holes: list[list[Point]] = []
    for ring in rings:
        (outers if area2(ring) > 0 else holes).append(ring)
    grouped: list[tuple[list[Point], list[list[Point]]]] = [(o, []) for o in outers]
    for hole in holes:
        candidates = [
            (abs(area2(o)), k)
            for k, o in enumerate(outers)
            if point_in_ring(hole[0], o) == 1
        ]
        if not candidates:
            raise AssertionError("hole ring with no enclosing outer ring")
        _, k = min(candidates)
        grouped[k][1].append(hole)
    domains = [PolygonalDomain.from_rings(o, hs) for o, hs in grouped]
    domains.sort(key=lambda d: min(d.outer))
    return domains
