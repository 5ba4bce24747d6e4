"""Exact two-robot planners.

Plans are searched over simple paths in the pair ordering graph (a
4-cycle for two robots).  A path fixes which separating relation holds
during each leg; the best intermediate configurations for the path are
then an LP, and the best plan is the minimum over paths.  Motion inside
one leg is the simultaneous one-turn schedule: every robot moves in x
at full speed, waits, then moves in y, all sharing one deadline.  With
both endpoints in a common ordering this keeps every pair separated
throughout, so feasibility is exactly path feasibility.

Endpoints are either fixed configurations or states: a trapezoid per
robot plus an optional side constraint, in which case the endpoint
configurations are free LP variables constrained to the state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import DBelowDiameter, NotCommonlyOrdered, StateInfeasible
from .geom.base import F0, Point
from .geom.decompose import Trapezoid
from .lp import OPTIMAL, LpProblem
from .model import (
    Config,
    RobotShape,
    Schedule,
    Trajectory,
    chain_one_turn_schedule,
    diameter,
    l1_dist,
    one_turn_trajectory,
)
from .orderings import Ordering, Rel, enumerate_simple_paths, orderings_containing

MAX_PATH_EDGES_2 = 3  # simple paths on the 4-cycle


@dataclass(frozen=True)
class State2:
    """A set of two-robot configurations: robot 0 in trap1, robot 1 in
    trap2, plus an optional order bound keeping the pair separated on
    one axis:

        sigma = +1: x0 <= x1 - 1      sigma = +2: y0 <= y1 - 1
        sigma = -1: x1 <= x0 - 1      sigma = -2: y1 <= y0 - 1

    The unit bound matches unit robot shapes, for which states are
    built.  sigma = 0 adds nothing.  Opposite bounds give disjoint
    states, so a plan between them must genuinely reorder the robots;
    a slack bound would let the two states share touching
    configurations and collapse that plan to nothing.
    """

    trap1: Trapezoid
    trap2: Trapezoid
    sigma: int = 0

    def __post_init__(self) -> None:
        if self.sigma not in (0, 1, -1, 2, -2):
            raise ValueError(f"unknown sigma {self.sigma}")

    @classmethod
    def points(cls, p1: Point, p2: Point, sigma: int = 0) -> "State2":
        return cls(Trapezoid.point(0, p1), Trapezoid.point(1, p2), sigma)

    def rows(self) -> list[tuple[dict[tuple[str, int], Fraction], Fraction]]:
        """Linear rows sum coeff[(axis, robot)] * coord <= rhs."""
        out: list[tuple[dict[tuple[str, int], Fraction], Fraction]] = []
        for r, trap in ((0, self.trap1), (1, self.trap2)):
            for ax, ay, b in trap.membership_constraints():
                row = {}
                if ax:
                    row[("x", r)] = ax
                if ay:
                    row[("y", r)] = ay
                out.append((row, b))
        if self.sigma:
            axis = "x" if abs(self.sigma) == 1 else "y"
            lo, hi = (0, 1) if self.sigma > 0 else (1, 0)
            out.append(({(axis, lo): Fraction(1), (axis, hi): Fraction(-1)}, Fraction(-1)))
        return out

    def contains(self, config: Config) -> bool:
        p1, p2 = config
        if not (self.trap1.contains(p1) and self.trap2.contains(p2)):
            return False
        if self.sigma:
            v1, v2 = (p1.x, p2.x) if abs(self.sigma) == 1 else (p1.y, p2.y)
            diff = v1 - v2 if self.sigma > 0 else v2 - v1
            if diff > -1:
                return False
        return True

    def bboxes(self) -> tuple[tuple[Point, Point], tuple[Point, Point]]:
        out = []
        for trap in (self.trap1, self.trap2):
            cs = trap.corners()
            xs = [c.x for c in cs]
            ys = [c.y for c in cs]
            out.append((Point(min(xs), min(ys)), Point(max(xs), max(ys))))
        return out[0], out[1]


@dataclass(frozen=True)
class Plan2:
    """A two-robot plan: its cost, a witness schedule, and the ordering
    path it travels."""

    value: Fraction
    schedule: Schedule
    orderings: tuple[Ordering, ...]

    @property
    def start(self) -> Config:
        return self.schedule.start

    @property
    def end(self) -> Config:
        return self.schedule.end


def common_orderings(a: Config, b: Config, shapes: Sequence[RobotShape]) -> list[Ordering]:
    in_b = set(orderings_containing(b, shapes))
    return [o for o in orderings_containing(a, shapes) if o in in_b]


def same_ordering_schedule(
    a: Config,
    b: Config,
    shapes: Sequence[RobotShape],
    d: Fraction | None = None,
    t0: Fraction = F0,
) -> Schedule:
    """Simultaneous one-turn motion a -> b over [t0, t0 + d].

    Requires a common ordering and d at least the configuration
    distance; any such schedule is collision free.
    """
    if not common_orderings(a, b, shapes):
        raise NotCommonlyOrdered("start and goal share no pair ordering")
    diam = diameter(a, b)
    if d is None:
        d = diam
    elif d < diam:
        raise DBelowDiameter(f"duration {d} is below the configuration distance {diam}")
    if d == 0:
        trajs = tuple(Trajectory.constant(p, t0, t0) for p in a)
    else:
        trajs = tuple(one_turn_trajectory(p, q, t0, d) for p, q in zip(a, b))
    return Schedule(tuple(shapes), trajs)


_Endpoint = tuple[str, object]  # ("config", Config) or ("state", State2)


def _leg_durations(waypoints: list[Config]) -> list[Fraction]:
    return [diameter(waypoints[u], waypoints[u + 1]) for u in range(len(waypoints) - 1)]


def _path_lp(
    path: Sequence[Ordering],
    start: _Endpoint,
    end: _Endpoint,
    shapes: Sequence[RobotShape],
    mode: str,
) -> tuple[Fraction, list[Config]] | None:
    """Best value over the ordering path, or None if infeasible.

    Waypoints 0 .. l+1 bracket legs 0 .. l, leg u inside path[u].
    Waypoint u for 1 <= u <= l satisfies both path[u-1] and path[u].
    """
    ell = len(path) - 1
    lp = LpProblem()
    fixed: dict[int, Config] = {}
    if start[0] == "config":
        fixed[0] = start[1]
    if end[0] == "config":
        fixed[ell + 1] = end[1]

    def coord(w: int, axis: str, r: int) -> tuple[str | None, Fraction]:
        if w in fixed:
            p = fixed[w][r]
            return None, (p.x if axis == "x" else p.y)
        return f"{axis}{w}r{r}", F0

    for w in range(ell + 2):
        if w in fixed:
            continue
        for r in range(2):
            lp.var(f"x{w}r{r}", free=True)
            lp.var(f"y{w}r{r}", free=True)

    def add_row(w: int, terms: dict[tuple[str, int], Fraction], rhs: Fraction) -> None:
        coeffs: dict[str, Fraction] = {}
        const = F0
        for (axis, r), c in terms.items():
            name, val = coord(w, axis, r)
            if name is None:
                const += c * val
            else:
                coeffs[name] = coeffs.get(name, F0) + c
        lp.add_leq(coeffs, rhs - const)

    # ordering membership per waypoint
    for w in range(ell + 2):
        members = [path[w - 1]] if w else []
        if w <= ell:
            members.append(path[w])
        seen = set()
        for o in members:
            for axis, lo, hi, sep in o.separations(shapes):
                key = (axis, lo, hi, sep)
                if key in seen:
                    continue
                seen.add(key)
                if w in fixed:
                    continue  # membership checked combinatorially
                add_row(w, {(axis, lo): Fraction(1), (axis, hi): Fraction(-1)}, -sep)

    # state rows at free endpoints
    for w, endpoint in ((0, start), (ell + 1, end)):
        if endpoint[0] == "state":
            for terms, rhs in endpoint[1].rows():
                add_row(w, terms, rhs)

    # per-leg per-robot displacement bounds
    for u in range(ell + 1):
        for r in range(2):
            for axis in ("x", "y"):
                aux = f"d{axis}{u}r{r}"
                lp.var(aux)
                n1, v1 = coord(u + 1, axis, r)
                n0, v0 = coord(u, axis, r)
                coeffs: dict[str, Fraction] = {}
                if n1 is not None:
                    coeffs[n1] = Fraction(1)
                if n0 is not None:
                    coeffs[n0] = coeffs.get(n0, F0) - 1
                lp.add_abs_leq(aux, coeffs, const=v1 - v0)

    if mode == "makespan":
        lp.var("phi")
        for choice in product(range(2), repeat=ell + 1):
            row = {"phi": Fraction(-1)}
            for u, r in enumerate(choice):
                for axis in ("x", "y"):
                    name = f"d{axis}{u}r{r}"
                    row[name] = row.get(name, F0) + 1
            lp.add_leq(row, F0)
        lp.minimize({"phi": 1})
    else:
        obj = {
            f"d{axis}{u}r{r}": Fraction(1)
            for u in range(ell + 1)
            for r in range(2)
            for axis in ("x", "y")
        }
        lp.minimize(obj)

    res = lp.solve()
    if res.status != OPTIMAL:
        return None

    waypoints: list[Config] = []
    for w in range(ell + 2):
        if w in fixed:
            waypoints.append(fixed[w])
        else:
            waypoints.append(tuple(
                Point(res[f"x{w}r{r}"], res[f"y{w}r{r}"]) for r in range(2)
            ))
    if mode == "makespan":
        value = sum(_leg_durations(waypoints), F0)
    else:
        value = sum(
            l1_dist(waypoints[u][r], waypoints[u + 1][r])
            for u in range(ell + 1)
            for r in range(2)
        )
    assert value == res.value, "leg recomputation must match the optimum"
    return value, waypoints


def state_orderings(state: State2, shapes: Sequence[RobotShape]) -> list[Ordering]:
    """Orderings that can hold somewhere in the state, by bounding box;
    the path LP settles exact feasibility."""
    (lo1, hi1), (lo2, hi2) = state.bboxes()
    sep_x = shapes[0].half_width + shapes[1].half_width
    sep_y = shapes[0].half_height + shapes[1].half_height
    fits = [
        rel
        for rel, ok in (
            (Rel.LEFT, hi2.x - lo1.x >= sep_x),
            (Rel.RIGHT, hi1.x - lo2.x >= sep_x),
            (Rel.BELOW, hi2.y - lo1.y >= sep_y),
            (Rel.ABOVE, hi1.y - lo2.y >= sep_y),
        )
        if ok
    ]
    return [Ordering(2, (rel,)) for rel in fits]


def _plan2(
    start: _Endpoint,
    end: _Endpoint,
    shapes: Sequence[RobotShape],
    mode: str,
) -> Plan2:
    if start[0] == "config":
        starts = orderings_containing(start[1], shapes)
    else:
        starts = state_orderings(start[1], shapes)
    if end[0] == "config":
        ends = orderings_containing(end[1], shapes)
    else:
        ends = state_orderings(end[1], shapes)
    if not starts or not ends:
        raise StateInfeasible("no pair ordering fits the endpoint state")

    lower = None
    if start[0] == "config" and end[0] == "config":
        a, b = start[1], end[1]
        if mode == "makespan":
            lower = diameter(a, b)
        else:
            lower = sum(l1_dist(p, q) for p, q in zip(a, b))
        shared = [o for o in starts if o in set(ends)]
        if shared:
            shared.sort(key=lambda o: o.rels)
            sched = same_ordering_schedule(a, b, shapes)
            return Plan2(lower, sched, (shared[0],))

    best: tuple[Fraction, int, tuple, list[Config], tuple[Ordering, ...]] | None = None
    for path in enumerate_simple_paths(starts, ends, MAX_PATH_EDGES_2):
        got = _path_lp(path, start, end, shapes, mode)
        if got is None:
            continue
        value, waypoints = got
        key = (value, len(path), tuple(o.rels for o in path))
        if best is None or key < best[:3]:
            best = (*key, waypoints, tuple(path))
        if lower is not None and best[0] == lower:
            break
    if best is None:
        raise StateInfeasible("no ordering path joins the endpoint states")
    value, _, _, waypoints, path = best
    return Plan2(value, chain_one_turn_schedule(waypoints, shapes), path)


def plan_makespan2(a: Config, b: Config, shapes: Sequence[RobotShape]) -> Plan2:
    """Minimum time to move two robots from a to b in the open plane."""
    return _plan2(("config", tuple(a)), ("config", tuple(b)), shapes, "makespan")


def plan_sum2(a: Config, b: Config, shapes: Sequence[RobotShape]) -> Plan2:
    """Minimum total distance travelled moving two robots from a to b."""
    return _plan2(("config", tuple(a)), ("config", tuple(b)), shapes, "sum")


def plan_state_makespan(sa: State2, sb: State2, shapes: Sequence[RobotShape]) -> Plan2:
    """Minimum time between the best configurations of two states."""
    return _plan2(("state", sa), ("state", sb), shapes, "makespan")


def plan_state_sum(sa: State2, sb: State2, shapes: Sequence[RobotShape]) -> Plan2:
    """Minimum total distance between the best configurations of two states."""
    return _plan2(("state", sa), ("state", sb), shapes, "sum")
