"""Brute-force lattice oracles.

Independent reference answers on a step-s lattice: makespan and total
distance by A* over fleet configurations, reachability by BFS inside
fixed regions, and exposure by Dijkstra with zero-cost covered moves.
All endpoint and window coordinates must be exact lattice multiples.

During one time step every robot moves to a neighboring lattice point
or stays; a step is legal when every pair stays separated along the
linear interpolation, checked exactly, which also rules out swaps and
shared targets.  Lattice answers are upper bounds on the continuous
optimum, converging as the step shrinks.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heappop, heappush
from itertools import product
from math import ceil, floor
from typing import Iterator, Sequence

from .errors import (
    BudgetExceeded,
    InfeasibleConfiguration,
    NotInDomain,
    NotLatticeExact,
    Unreachable,
)
from .geom.base import FHALF, Point, min_gap_on_segment, rat, RatLike
from .geom.polygon import PolygonalDomain
from .model import Config, RobotShape, erosion_components, is_feasible

DEFAULT_BUDGET = 300_000

_STEPS = ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1))

_ICell = tuple[int, int]
_IConfig = tuple[_ICell, ...]

# separation checks depend only on the scaled geometry, so the memo is
# shared across grids (and across calls with equal shapes and step)
_PAIR_GAP: dict[tuple, bool] = {}


def _as_box(reg: PolygonalDomain) -> tuple[Fraction, Fraction, Fraction, Fraction] | None:
    ring = reg.outer
    if reg.holes or len(ring) != 4:
        return None
    xs, ys = {p.x for p in ring}, {p.y for p in ring}
    if len(xs) != 2 or len(ys) != 2 or len(set(ring)) != 4:
        return None
    return min(xs), min(ys), max(xs), max(ys)


def _scale(value: Fraction, step: Fraction, what: str) -> int:
    q = value / step
    if q.denominator != 1:
        raise NotLatticeExact(f"{what} {value} is not a multiple of the step {step}")
    return q.numerator


class _Grid:
    """Shared lattice machinery: windows, regions, and move legality."""

    def __init__(
        self,
        shapes: Sequence[RobotShape],
        step: RatLike,
        window: tuple[Point, Point],
        regions: Sequence[PolygonalDomain] = (),
    ):
        self.shapes = tuple(shapes)
        self.step = rat(step)
        if self.step <= 0:
            raise ValueError("step must be positive")
        # off-lattice windows round outward; only endpoints must be exact
        self.x0 = floor(window[0].x / self.step)
        self.y0 = floor(window[0].y / self.step)
        self.x1 = ceil(window[1].x / self.step)
        self.y1 = ceil(window[1].y / self.step)
        # coverage is per robot: the whole box must fit, so each shape
        # sees the regions eroded by its own half extents
        eroded = {
            shape: tuple(c for reg in regions for c in erosion_components(reg, shape))
            for shape in set(self.shapes)
        }
        self.regions = tuple(eroded[shape] for shape in self.shapes)
        # rectangle regions degrade to integer bound checks on the
        # scaled lattice; anything else keeps the polygon tests
        self._boxes: list[list[tuple[int, int, int, int]]] = []
        self._other: list[list[PolygonalDomain]] = []
        for regs in self.regions:
            boxes, other = [], []
            for reg in regs:
                b = _as_box(reg)
                if b is None:
                    other.append(reg)
                else:
                    boxes.append(
                        (
                            ceil(b[0] / self.step),
                            ceil(b[1] / self.step),
                            floor(b[2] / self.step),
                            floor(b[3] / self.step),
                        )
                    )
            self._boxes.append(boxes)
            self._other.append(other)
        k = len(self.shapes)
        self._pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
        self._sep = {}
        for i, j in self._pairs:
            su = (self.shapes[i].half_width + self.shapes[j].half_width) / self.step
            sv = (self.shapes[i].half_height + self.shapes[j].half_height) / self.step
            # memo keys hash integers, not Fractions
            tag = (su.numerator, su.denominator, sv.numerator, sv.denominator)
            self._sep[i, j] = (su, sv, tag)
        self._cell_opts: dict[_ICell, tuple[tuple[_ICell, _ICell], ...]] = {}
        self._covered_pt: dict[tuple[RobotShape, _ICell], bool] = {}
        self._covered_move: dict[tuple[RobotShape, _ICell, _ICell], bool] = {}

    def scale_config(self, config: Config) -> _IConfig:
        return tuple(
            (_scale(p.x, self.step, "coordinate"), _scale(p.y, self.step, "coordinate"))
            for p in config
        )

    def point(self, cell: _ICell) -> Point:
        return Point(cell[0] * self.step, cell[1] * self.step)

    def in_window(self, cell: _ICell) -> bool:
        return self.x0 <= cell[0] <= self.x1 and self.y0 <= cell[1] <= self.y1

    def cell_options(self, cell: _ICell) -> tuple[tuple[_ICell, _ICell], ...]:
        """(move, target) pairs leaving the window respected."""
        got = self._cell_opts.get(cell)
        if got is None:
            got = tuple(
                (mv, (cell[0] + mv[0], cell[1] + mv[1]))
                for mv in _STEPS
                if self.in_window((cell[0] + mv[0], cell[1] + mv[1]))
            )
            self._cell_opts[cell] = got
        return got

    def pair_move_ok(self, i: int, j: int, rel: _ICell, mi: _ICell, mj: _ICell) -> bool:
        """Separation of robots i and j along one interpolated step;
        rel is the scaled displacement from i to j before the step."""
        su, sv, tag = self._sep[i, j]
        key = (tag, rel, mi, mj)
        got = _PAIR_GAP.get(key)
        if got is None:
            # everything scales by 1/step, which preserves the gap sign
            u0, v0 = Fraction(rel[0]), Fraction(rel[1])
            u1 = u0 + (mj[0] - mi[0])
            v1 = v0 + (mj[1] - mi[1])
            gap, _ = min_gap_on_segment(u0, u1, v0, v1, su, sv)
            got = gap >= 0
            _PAIR_GAP[key] = got
        return got

    def fleet_moves(self, config: _IConfig) -> Iterator[tuple[_IConfig, int]]:
        """Legal one-step successors with the count of moved robots."""
        options = [self.cell_options(c) for c in config]
        rels = {
            (i, j): (config[j][0] - config[i][0], config[j][1] - config[i][1])
            for i, j in self._pairs
        }
        memo = _PAIR_GAP
        for combo in product(*options):
            moved = sum(1 for mv, _ in combo if mv != (0, 0))
            if moved == 0:
                continue
            ok = True
            for i, j in self._pairs:
                tag = self._sep[i, j][2]
                key = (tag, rels[i, j], combo[i][0], combo[j][0])
                got = memo.get(key)
                if got is None:
                    got = self.pair_move_ok(i, j, rels[i, j], combo[i][0], combo[j][0])
                if not got:
                    ok = False
                    break
            if ok:
                yield tuple(t for _, t in combo), moved

    # region coverage: robot i is covered when its box fits inside a
    # single eroded region for the whole cell or one-step swept segment
    # (distinct regions are never bridged within one step)

    def point_covered(self, i: int, cell: _ICell) -> bool:
        cx, cy = cell
        if any(x0 <= cx <= x1 and y0 <= cy <= y1 for x0, y0, x1, y1 in self._boxes[i]):
            return True
        if not self._other[i]:
            return False
        key = (self.shapes[i], cell)
        got = self._covered_pt.get(key)
        if got is None:
            p = self.point(cell)
            got = any(reg.point_in_domain(p) >= 0 for reg in self._other[i])
            self._covered_pt[key] = got
        return got

    def move_covered(self, i: int, cell: _ICell, target: _ICell) -> bool:
        if cell == target:
            return self.point_covered(i, cell)
        # boxes are convex, so endpoint containment covers the segment
        if any(
            x0 <= cell[0] <= x1 and y0 <= cell[1] <= y1
            and x0 <= target[0] <= x1 and y0 <= target[1] <= y1
            for x0, y0, x1, y1 in self._boxes[i]
        ):
            return True
        if not self._other[i]:
            return False
        key = (self.shapes[i], cell, target)
        got = self._covered_move.get(key)
        if got is None:
            a, b = self.point(cell), self.point(target)
            got = any(
                reg.segment_inside_params(a, b) == [(Fraction(0), Fraction(1))]
                for reg in self._other[i]
            )
            self._covered_move[key] = got
        return got

    def all_moves_covered(self, cfg: _IConfig, ncfg: _IConfig) -> bool:
        for i, (c, nc) in enumerate(zip(cfg, ncfg)):
            if not self.move_covered(i, c, nc):
                return False
        return True


def _default_window(configs: Sequence[Config], pad: int, step: Fraction) -> tuple[Point, Point]:
    xs = [p.x for cfg in configs for p in cfg]
    ys = [p.y for cfg in configs for p in cfg]
    lo = Point(min(xs) - pad, min(ys) - pad)
    hi = Point(max(xs) + pad, max(ys) + pad)
    return lo, hi


def _check_endpoints(grid: _Grid, a: Config, b: Config) -> tuple[_IConfig, _IConfig]:
    if not is_feasible(a, grid.shapes) or not is_feasible(b, grid.shapes):
        raise InfeasibleConfiguration("oracle endpoints must be separated configurations")
    sa, sb = grid.scale_config(a), grid.scale_config(b)
    for cell in (*sa, *sb):
        if not grid.in_window(cell):
            raise NotInDomain(f"endpoint {grid.point(cell)} outside the search window")
    return sa, sb


def grid_makespan(
    a: Config,
    b: Config,
    shapes: Sequence[RobotShape],
    step: RatLike = FHALF,
    window: tuple[Point, Point] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Fraction:
    """Best lattice makespan inside the window (default: endpoints
    padded by two units)."""
    return _grid_cmp(a, b, shapes, step, window, budget, "makespan")


def grid_sum(
    a: Config,
    b: Config,
    shapes: Sequence[RobotShape],
    step: RatLike = FHALF,
    window: tuple[Point, Point] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Fraction:
    """Best lattice total travel distance inside the window."""
    return _grid_cmp(a, b, shapes, step, window, budget, "sum")


def _grid_cmp(
    a: Config,
    b: Config,
    shapes: Sequence[RobotShape],
    step: RatLike,
    window: tuple[Point, Point] | None,
    budget: int,
    mode: str,
) -> Fraction:
    step = rat(step)
    if window is None:
        pad = max(2, len(shapes) - 1)
        window = _default_window((a, b), pad, step)
    grid = _Grid(shapes, step, window)
    start, goal = _check_endpoints(grid, a, b)

    def h(cfg: _IConfig) -> int:
        dists = [abs(c[0] - g[0]) + abs(c[1] - g[1]) for c, g in zip(cfg, goal)]
        return max(dists) if mode == "makespan" else sum(dists)

    # deeper-first tie-break keeps equal-f plateaus from flooding
    best: dict[_IConfig, int] = {start: 0}
    heap: list[tuple[int, int, _IConfig]] = [(h(start), 0, start)]
    pops = 0
    while heap:
        f, ng, cfg = heappop(heap)
        g = -ng
        if g > best.get(cfg, g):
            continue
        if cfg == goal:
            return g * step
        pops += 1
        if pops > budget:
            raise BudgetExceeded(f"lattice search exceeded {budget} expansions")
        for ncfg, moved in grid.fleet_moves(cfg):
            ng = g + (1 if mode == "makespan" else moved)
            if ng < best.get(ncfg, ng + 1):
                best[ncfg] = ng
                heappush(heap, (ng + h(ncfg), -ng, ncfg))
    raise Unreachable("goal not reachable on the lattice inside the window")


def grid_feasible(
    a: Config,
    b: Config,
    shapes: Sequence[RobotShape],
    regions: Sequence[PolygonalDomain],
    step: RatLike = FHALF,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """Lattice reachability with every robot box inside some region the
    whole time (swept segments included)."""
    step = rat(step)
    xs = [p.x for reg in regions for p in reg.outer]
    ys = [p.y for reg in regions for p in reg.outer]
    window = (Point(min(xs), min(ys)), Point(max(xs), max(ys)))
    grid = _Grid(shapes, step, window, regions)
    start, goal = _check_endpoints(grid, a, b)
    for cfg in (start, goal):
        for i, cell in enumerate(cfg):
            if not grid.point_covered(i, cell):
                raise NotInDomain(f"endpoint {grid.point(cell)} does not fit in any region")
    if start == goal:
        return True
    seen = {start}
    frontier = [start]
    pops = 0
    while frontier:
        nxt: list[_IConfig] = []
        for cfg in frontier:
            pops += 1
            if pops > budget:
                raise BudgetExceeded(f"lattice search exceeded {budget} expansions")
            for ncfg, _ in grid.fleet_moves(cfg):
                if ncfg in seen:
                    continue
                if not grid.all_moves_covered(cfg, ncfg):
                    continue
                if ncfg == goal:
                    return True
                seen.add(ncfg)
                nxt.append(ncfg)
        frontier = nxt
    return False


def grid_exposure(
    a: Config,
    b: Config,
    shapes: Sequence[RobotShape],
    regions: Sequence[PolygonalDomain],
    step: RatLike = FHALF,
    window: tuple[Point, Point] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Fraction:
    """Least lattice time spent with any robot uncovered while moving
    from a to b inside the window.

    A robot is covered when its whole box fits inside one region.  A
    step costs nothing when every robot's swept box stays covered,
    otherwise it costs the step length.  Parking inside coverage is
    free, so this is a plain shortest path.
    """
    step = rat(step)
    if window is None:
        corners = [Point(p.x, p.y) for reg in regions for p in reg.outer]
        window = _default_window((a, b, tuple(corners) or a), 2, step)
    grid = _Grid(shapes, step, window, regions)
    start, goal = _check_endpoints(grid, a, b)
    best: dict[_IConfig, int] = {start: 0}
    heap: list[tuple[int, _IConfig]] = [(0, start)]
    pops = 0
    while heap:
        g, cfg = heappop(heap)
        if g > best.get(cfg, g):
            continue
        if cfg == goal:
            return g * step
        pops += 1
        if pops > budget:
            raise BudgetExceeded(f"lattice search exceeded {budget} expansions")
        for ncfg, _ in grid.fleet_moves(cfg):
            ng = g if grid.all_moves_covered(cfg, ncfg) else g + 1
            if ng < best.get(ncfg, ng + 1):
                best[ncfg] = ng
                heappush(heap, (ng, ncfg))
    raise Unreachable("goal not reachable on the lattice inside the window")
