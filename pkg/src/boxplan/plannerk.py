"""Ordering-path planners for small fleets.

Same search idea as the two-robot planner, generalized: enumerate
simple paths through the k-robot ordering graph and solve one LP per
path.  The makespan LP is deliberately formulated differently from the
two-robot planner, with one duration variable per leg instead of one
global bound over per-leg robot choices, so that agreeing answers
cross-validate the two implementations.

For more than two robots the enumeration is bounded (path length and
LP budget), so results are upper bounds; ``PlanK.exact`` reports when
the value is certified optimal, either by matching a lower bound or,
for two robots, by exhausting every simple path.  The lower bound is
the configuration distance strengthened by exact two-robot planning of
each pair alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ResourceBound, StateInfeasible
from .geom.base import F0, Point
from .lp import OPTIMAL, LpProblem
from .model import (
    Config,
    RobotShape,
    Schedule,
    chain_one_turn_schedule,
    diameter,
    l1_dist,
)
from .orderings import MAX_ROBOTS, Ordering, neighbors, orderings_containing
from .planner2 import (
    MAX_PATH_EDGES_2,
    State2,
    state_orderings,
    plan_makespan2,
    plan_sum2,
    same_ordering_schedule,
)

DEFAULT_MAX_EDGES = 4
DEFAULT_LP_BUDGET = 2000


@dataclass(frozen=True)
class PlanK:
    """A fleet plan; ``exact`` is True only when the value is certified
    optimal, otherwise it is the best upper bound found."""

    value: Fraction
    schedule: Schedule
    orderings: tuple[Ordering, ...]
    exact: bool

    @property
    def start(self) -> Config:
        return self.schedule.start

    @property
    def end(self) -> Config:
        return self.schedule.end


_Endpoint = tuple[str, object]


def _lower_bound(a: Config, b: Config, shapes: Sequence[RobotShape], mode: str) -> Fraction:
    k = len(a)
    if mode == "makespan":
        lb = diameter(a, b)
    else:
        lb = sum(l1_dist(p, q) for p, q in zip(a, b))
    if k == 2:
        # keep the two-robot cross-check independent of planner2
        return lb
    straight = [l1_dist(p, q) for p, q in zip(a, b)]
    for i in range(k):
        for j in range(i + 1, k):
            pa, pb = (a[i], a[j]), (b[i], b[j])
            pair_shapes = (shapes[i], shapes[j])
            if mode == "makespan":
                cand = plan_makespan2(pa, pb, pair_shapes).value
            else:
                rest = sum(straight) - straight[i] - straight[j]
                cand = plan_sum2(pa, pb, pair_shapes).value + rest
            lb = max(lb, cand)
    return lb


def _path_lp_k(
    path: Sequence[Ordering],
    start: _Endpoint,
    end: _Endpoint,
    shapes: Sequence[RobotShape],
    mode: str,
) -> tuple[Fraction, list[Config]] | None:
    k = len(shapes)
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
        for r in range(k):
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

    for w in range(ell + 2):
        if w in fixed:
            continue
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
                add_row(w, {(axis, lo): Fraction(1), (axis, hi): Fraction(-1)}, -sep)

    for w, endpoint in ((0, start), (ell + 1, end)):
        if endpoint[0] == "state":
            for terms, rhs in endpoint[1].rows():
                add_row(w, terms, rhs)

    for u in range(ell + 1):
        for r in range(k):
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
        for u in range(ell + 1):
            lp.var(f"phi{u}")
            for r in range(k):
                lp.add_leq(
                    {f"dx{u}r{r}": 1, f"dy{u}r{r}": 1, f"phi{u}": -1},
                    F0,
                )
        lp.minimize({f"phi{u}": 1 for u in range(ell + 1)})
    else:
        lp.minimize({
            f"d{axis}{u}r{r}": 1
            for u in range(ell + 1)
            for r in range(k)
            for axis in ("x", "y")
        })

    res = lp.solve()
    if res.status != OPTIMAL:
        return None
    waypoints: list[Config] = []
    for w in range(ell + 2):
        if w in fixed:
            waypoints.append(fixed[w])
        else:
            waypoints.append(tuple(
                Point(res[f"x{w}r{r}"], res[f"y{w}r{r}"]) for r in range(k)
            ))
    if mode == "makespan":
        value = sum(
            (diameter(waypoints[u], waypoints[u + 1]) for u in range(ell + 1)), F0
        )
    else:
        value = sum(
            l1_dist(waypoints[u][r], waypoints[u + 1][r])
            for u in range(ell + 1)
            for r in range(k)
        )
    assert value == res.value, "leg recomputation must match the optimum"
    return value, waypoints


def _distances_to(ends: set[Ordering], max_depth: int,
                  neighbor_memo: dict[Ordering, list[Ordering]]) -> dict[Ordering, int]:
    dist = {o: 0 for o in ends}
    frontier = list(ends)
    for depth in range(1, max_depth + 1):
        nxt = []
        for o in frontier:
            for n in neighbor_memo.setdefault(o, neighbors(o)):
                if n not in dist:
                    dist[n] = depth
                    nxt.append(n)
        frontier = nxt
    return dist


def _plan_k(
    start: _Endpoint,
    end: _Endpoint,
    shapes: Sequence[RobotShape],
    mode: str,
    max_edges: int,
    lp_budget: int,
) -> PlanK:
    k = len(shapes)
    if k > MAX_ROBOTS:
        raise ResourceBound(f"ordering-path planning handles at most {MAX_ROBOTS} robots")
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

    lower: Fraction | None = None
    if start[0] == "config" and end[0] == "config":
        a, b = start[1], end[1]
        lower = _lower_bound(a, b, shapes, mode)
        end_set = set(ends)
        shared = sorted((o for o in starts if o in end_set), key=lambda o: o.rels)
        if shared:
            if mode == "makespan":
                value = diameter(a, b)
            else:
                value = sum(l1_dist(p, q) for p, q in zip(a, b))
            return PlanK(value, same_ordering_schedule(a, b, shapes), (shared[0],), True)

    neighbor_memo: dict[Ordering, list[Ordering]] = {}
    dist = _distances_to(set(ends), max_edges, neighbor_memo)
    end_set = set(ends)
    best: tuple | None = None
    # pruning at the path-length horizon and giving up on the LP budget
    # affect exactness differently, so they are tracked apart
    horizon_cut = False
    budget_cut = False
    solved = 0
    frontier = [[s] for s in sorted(starts, key=lambda o: o.rels) if s in dist]
    horizon_cut = horizon_cut or len(frontier) < len(starts)
    done = False
    while frontier and not done:
        for path in frontier:
            if path[-1] not in end_set:
                continue
            if solved >= lp_budget:
                budget_cut = True
                done = True
                break
            solved += 1
            got = _path_lp_k(path, start, end, shapes, mode)
            if got is None:
                continue
            value, waypoints = got
            key = (value, len(path), tuple(o.rels for o in path))
            if best is None or key < best[:3]:
                best = (*key, waypoints, tuple(path))
            if lower is not None and value == lower:
                done = True
                break
        if done:
            break
        next_frontier: list[list[Ordering]] = []
        for path in frontier:
            edges_used = len(path) - 1
            on_path = set(path)
            for nxt in neighbor_memo.setdefault(path[-1], neighbors(path[-1])):
                if nxt in on_path:
                    continue
                d = dist.get(nxt)
                if d is None or edges_used + 1 + d > max_edges:
                    horizon_cut = True
                    continue
                next_frontier.append(path + [nxt])
            if len(next_frontier) > 8 * lp_budget:
                budget_cut = True
                break
        frontier = next_frontier

    if best is None:
        raise ResourceBound(
            "no ordering path found within the search bounds; raise max_edges"
        )
    value, _, _, waypoints, path = best
    # two robots need at most MAX_PATH_EDGES_2 region switches, so once
    # every simple path up to that length has been solved the horizon
    # cannot hide a better plan
    full_2 = k == 2 and not budget_cut and (
        not horizon_cut or max_edges >= MAX_PATH_EDGES_2
    )
    exact = (lower is not None and value == lower) or full_2
    return PlanK(value, chain_one_turn_schedule(waypoints, shapes), path, exact)


def plan_makespan_k(
    a: Config,
    b: Config,
    shapes: Sequence[RobotShape],
    max_edges: int = DEFAULT_MAX_EDGES,
    lp_budget: int = DEFAULT_LP_BUDGET,
) -> PlanK:
    """Minimum fleet makespan from a to b in the open plane."""
    return _plan_k(("config", tuple(a)), ("config", tuple(b)), shapes, "makespan",
                   max_edges, lp_budget)


def plan_sum_k(
    a: Config,
    b: Config,
    shapes: Sequence[RobotShape],
    max_edges: int = DEFAULT_MAX_EDGES,
    lp_budget: int = DEFAULT_LP_BUDGET,
) -> PlanK:
    """Minimum total distance travelled from a to b in the open plane."""
    return _plan_k(("config", tuple(a)), ("config", tuple(b)), shapes, "sum",
                   max_edges, lp_budget)


def plan_state_makespan_k(
    sa: State2,
    sb: State2,
    shapes: Sequence[RobotShape],
    max_edges: int = DEFAULT_MAX_EDGES,
    lp_budget: int = DEFAULT_LP_BUDGET,
) -> PlanK:
    """State-endpoint variant of the two-robot cross-check planner."""
    return _plan_k(("state", sa), ("state", sb), shapes, "makespan",
                   max_edges, lp_budget)


def plan_state_sum_k(
    sa: State2,
    sb: State2,
    shapes: Sequence[RobotShape],
    max_edges: int = DEFAULT_MAX_EDGES,
    lp_budget: int = DEFAULT_LP_BUDGET,
) -> PlanK:
    """State-endpoint variant, total-distance objective."""
    return _plan_k(("state", sa), ("state", sb), shapes, "sum",
                   max_edges, lp_budget)
