"""Two-robot reachability inside a polygonal workspace.

Whether one placement of two robots can reach another is decided
combinatorially.  Every feasible placement normalizes, by pushing both
robots away from a separating line and sliding them along the boundary,
onto a pair of corner vertices of the eroded center region.  Corner
pairs form a finite graph whose edges are single-robot moves along
boundary and decomposition edges, so reachability reduces to connected
components, and any graph path replays as an explicit schedule in which
one robot moves at a time.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    EmptyErosion,
    InfeasibleConfiguration,
    NotInDomain,
    NotReachable,
)
from .geom.base import F0, Point, l1_dist, merge_intervals, min_gap_on_segment
from .geom.decompose import TrapezoidalDecomposition
from .geom.polygon import PolygonalDomain
from .model import (
    Config,
    RobotShape,
    Schedule,
    Trajectory,
    UNIT,
    erosion_components,
    pair_gap,
)

Move = tuple[int, Point]


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
    if cross != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def moves_schedule(start: Config, moves: list[Move], shapes: tuple[RobotShape, ...]) -> Schedule:
    """Sequential one-robot-at-a-time schedule through straight moves."""
    t = F0
    bps: list[list[tuple[Fraction, Point]]] = [[(t, p)] for p in start]
    for r, dst in moves:
        src = bps[r][-1][1]
        d = l1_dist(src, dst)
        if d == 0:
            continue
        if bps[r][-1][0] != t:
            bps[r].append((t, src))
        t += d
        bps[r].append((t, dst))
    trajectories = []
    for b in bps:
        if b[-1][0] != t:
            b.append((t, b[-1][1]))
        trajectories.append(Trajectory.from_points(b))
    return Schedule(shapes, tuple(trajectories))


def _replay(start: Config, moves: list[Move]) -> list[Config]:
    configs = [tuple(start)]
    for r, dst in moves:
        cur = list(configs[-1])
        cur[r] = dst
        configs.append(tuple(cur))
    return configs


class FeasibilityStructure:
    """Corner-pair connectivity of two equal robots in one domain.

    Built once per domain; immutable afterwards, so queries can run
    concurrently.
    """

    def __init__(self, domain: PolygonalDomain, shape: RobotShape = UNIT):
        self.domain = domain
        self.shape = shape
        self.components = erosion_components(domain, shape)
        if not self.components:
            raise EmptyErosion("the robot does not fit anywhere in the domain")
        self.hdecs = [TrapezoidalDecomposition(c, "h") for c in self.components]
        self.vdecs = [TrapezoidalDecomposition(c, "v") for c in self.components]
        self._build_skeleton()
        self._build_pair_graph()

    # skeleton: eroded-region vertices and decomposition Steiner points,
    # linked along boundary edges and decomposition chords

    def _build_skeleton(self) -> None:
        self.vstar: list[Point] = []
        self._vcomp: dict[Point, int] = {}
        segments: list[tuple[Point, Point]] = []
        for ci, comp in enumerate(self.components):
            pts = {v for ring in comp.all_rings() for v in ring}
            pts.update(self.hdecs[ci].steiner_points())
            pts.update(self.vdecs[ci].steiner_points())
            for p in pts:
                self._vcomp[p] = ci
            self.vstar.extend(pts)
            segments.extend(comp.iter_edges())
            segments.extend(self.hdecs[ci].chords)
            segments.extend(self.vdecs[ci].chords)
        self.vstar.sort()
        self.adj: dict[Point, list[Point]] = {p: [] for p in self.vstar}
        for a, b in segments:
            stops = sorted(
                (p for p in self.vstar if _on_segment(p, a, b)),
                key=lambda p: (abs(p.x - a.x) + abs(p.y - a.y)),
            )
            for u, v in zip(stops, stops[1:]):
                if v not in self.adj[u]:
                    self.adj[u].append(v)
                    self.adj[v].append(u)
        for p in self.adj:
            self.adj[p].sort()

    def _sweep_ok(self, src: Point, dst: Point, static: Point) -> bool:
        gap, _ = min_gap_on_segment(
            src.x - static.x,
            dst.x - static.x,
            src.y - static.y,
            dst.y - static.y,
            self.shape.width,
            self.shape.height,
        )
        return gap >= 0

    def _build_pair_graph(self) -> None:
        self.pairs: list[tuple[Point, Point]] = [
            (p, q)
            for p in self.vstar
            for q in self.vstar
            if pair_gap(p, q, self.shape, self.shape) >= 0
        ]
        self.pair_ids = {pq: i for i, pq in enumerate(self.pairs)}
        self.pair_adj: list[list[int]] = [[] for _ in self.pairs]
        for i, (p, q) in enumerate(self.pairs):
            for p2 in self.adj[p]:
                j = self.pair_ids.get((p2, q))
                if j is not None and self._sweep_ok(p, p2, q):
                    self.pair_adj[i].append(j)
            for q2 in self.adj[q]:
                j = self.pair_ids.get((p, q2))
                if j is not None and self._sweep_ok(q, q2, p):
                    self.pair_adj[i].append(j)
        self.pair_label = [-1] * len(self.pairs)
        label = 0
        for root in range(len(self.pairs)):
            if self.pair_label[root] >= 0:
                continue
            self.pair_label[root] = label
            stack = [root]
            while stack:
                u = stack.pop()
                for v in self.pair_adj[u]:
                    if self.pair_label[v] < 0:
                        self.pair_label[v] = label
                        stack.append(v)
            label += 1

    # single-robot view, used when the second robot lives in another
    # domain and the two never interact

    def component_of(self, p: Point) -> int:
        for ci, comp in enumerate(self.components):
            if comp.point_in_domain(p) >= 0:
                return ci
        raise NotInDomain(f"center {p} does not fit in the domain")

    def single_robot_path(self, src: Point, dst: Point) -> list[Point]:
        """Polyline from src to dst inside one eroded component."""
        ci = self.component_of(src)
        if self.component_of(dst) != ci:
            raise NotReachable("placements lie in different components")
        enter = min(self.hdecs[ci].locate(src).corners())
        leave = min(self.hdecs[ci].locate(dst).corners())
        parent: dict[Point, Point | None] = {enter: None}
        frontier = [enter]
        while frontier and leave not in parent:
            nxt: list[Point] = []
            for u in frontier:
                for v in self.adj[u]:
                    if v not in parent:
                        parent[v] = u
                        nxt.append(v)
            frontier = nxt
        assert leave in parent, "skeleton must connect corners of one component"
        chain = [leave]
        while parent[chain[-1]] is not None:
            chain.append(parent[chain[-1]])
        path = [src] + list(reversed(chain)) + [dst]
        return [p for i, p in enumerate(path) if i == 0 or p != path[i - 1]]

    # normalization: push both robots away from a separating line to the
    # region boundary, then slide each to an edge endpoint

    def _check_config(self, config: Config) -> None:
        for p in config:
            self.component_of(p)
        if pair_gap(config[0], config[1], self.shape, self.shape) < 0:
            raise InfeasibleConfiguration("robots overlap")

    def _reach(self, ci: int, p: Point, axis: str, sign: int) -> Point:
        """Farthest boundary point pushing p along the axis."""
        if axis == "x":
            dec, level, coord = self.hdecs[ci], p.y, p.x
        else:
            dec, level, coord = self.vdecs[ci], p.x, p.y
        intervals = merge_intervals(
            (t.left.x_at(level), t.right.x_at(level))
            for t in dec.trapezoids
            if t.bottom <= level <= t.top
        )
        for lo, hi in intervals:
            if lo <= coord <= hi:
                hit = hi if sign > 0 else lo
                return Point(hit, level) if axis == "x" else Point(level, hit)
        raise NotInDomain(f"center {p} does not fit in the domain")

    def _slide_target(self, ci: int, q: Point, axis: str, sign: int) -> Point:
        comp = self.components[ci]
        if any(q == v for ring in comp.all_rings() for v in ring):
            return q
        for a, b in comp.iter_edges():
            if _on_segment(q, a, b):
                along = (lambda p: p.x) if axis == "x" else (lambda p: p.y)
                perp = (lambda p: p.y) if axis == "x" else (lambda p: p.x)
                return min(
                    (a, b),
                    key=lambda e: (-sign * along(e), abs(perp(e) - perp(q)), e.y, e.x),
                )
        raise AssertionError("push must end on a boundary edge")

    def _normalize_moves(self, config: Config) -> tuple[tuple[Point, Point], list[Move]]:
        self._check_config(config)
        p1, p2 = config
        gx = abs(p1.x - p2.x) - self.shape.width
        gy = abs(p1.y - p2.y) - self.shape.height
        # ties prefer the horizontal separating line
        axis = "y" if gy >= max(gx, 0) else "x"
        moves: list[Move] = []
        corners: list[Point] = []
        for r, p in enumerate(config):
            other = config[1 - r]
            if axis == "x":
                sign = 1 if p.x > other.x else -1
            else:
                sign = 1 if p.y > other.y else -1
            ci = self.component_of(p)
            hit = self._reach(ci, p, axis, sign)
            corner = self._slide_target(ci, hit, axis, sign)
            moves.extend([(r, hit), (r, corner)])
            corners.append(corner)
        out = (corners[0], corners[1])
        assert out in self.pair_ids, "normalization must land on a feasible corner pair"
        return out, moves

    def normalize_to_corner(self, config: Config) -> tuple[Point, Point]:
        """Corner pair reachable from the configuration."""
        return self._normalize_moves(config)[0]

    def normalization_schedule(self, config: Config) -> Schedule:
        corners, moves = self._normalize_moves(config)
        return moves_schedule(config, moves, (self.shape, self.shape))

    def query_feasible(self, a: Config, b: Config) -> bool:
        """True iff some legal motion takes configuration a to b."""
        ca = self.normalize_to_corner(a)
        cb = self.normalize_to_corner(b)
        return self.pair_label[self.pair_ids[ca]] == self.pair_label[self.pair_ids[cb]]

    def _pair_path(self, src: int, dst: int) -> list[int]:
        parent: dict[int, int | None] = {src: None}
        frontier = [src]
        while frontier and dst not in parent:
            nxt: list[int] = []
            for u in frontier:
                for v in self.pair_adj[u]:
                    if v not in parent:
                        parent[v] = u
                        nxt.append(v)
            frontier = nxt
        chain = [dst]
        while parent[chain[-1]] is not None:
            chain.append(parent[chain[-1]])
        return list(reversed(chain))

    def reconstruct_zero_exposure_schedule(self, a: Config, b: Config) -> Schedule:
        """Explicit schedule witnessing query_feasible(a, b).

        Concatenates a's normalization, a corner-pair path with one
        robot moving per edge, and b's normalization reversed.
        """
        ca, moves_a = self._normalize_moves(a)
        cb, moves_b = self._normalize_moves(b)
        ia, ib = self.pair_ids[ca], self.pair_ids[cb]
        if self.pair_label[ia] != self.pair_label[ib]:
            raise NotReachable("endpoint configurations are in different components")
        moves = list(moves_a)
        path = self._pair_path(ia, ib)
        for u, v in zip(path, path[1:]):
            pu, pv = self.pairs[u], self.pairs[v]
            r = 0 if pu[1] == pv[1] else 1
            moves.append((r, pv[r]))
        configs_b = _replay(b, moves_b)
        for r, _ in reversed(moves_b):
            configs_b.pop()
            moves.append((r, configs_b[-1][r]))
        return moves_schedule(a, moves, (self.shape, self.shape))


def build_feasibility(domain: PolygonalDomain, shape: RobotShape = UNIT) -> FeasibilityStructure:
    """Preprocess a domain for two-robot reachability queries."""
    return FeasibilityStructure(domain, shape)
