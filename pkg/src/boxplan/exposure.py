"""Min-exposure planning for two unit robots under a polygonal cover.

A robot is covered while its footprint lies inside a single cover
domain and exposed otherwise; the cost of a schedule is the total time
during which at least one robot is exposed.  The planner searches a
finite graph.  Its vertices are pair states: one cover trapezoid per
robot plus an optional unit closeness bound on one axis, chosen so
that any two configurations of a state can reach each other while
staying covered.  Zero-weight edges join states whose representatives
are mutually reachable under cover, every other pair of states is
joined by a positive edge paying the cover-oblivious two-robot
makespan between the states, and the endpoints enter the graph as
degenerate point states.  A shortest path then bounds the optimal
exposure from above, and its expansion yields a witness schedule.

The graph weights ignore where the positive legs actually run, so the
measured exposure of the witness schedule can undercut the graph
distance; both numbers are reported.
"""

from __future__ import annotations

import heapq
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    EmptyErosion,
    InfeasibleConfiguration,
    NoRepresentative,
    NotInDomain,
)
from .feas2 import FeasibilityStructure, Move, build_feasibility, moves_schedule
from .geom.base import F0, Point, orient, pt
from .geom.decompose import Trapezoid, TrapezoidalDecomposition
from .geom.polygon import PolygonalDomain
from .lp import OPTIMAL, LpProblem
from .model import (
    UNIT,
    Config,
    RobotShape,
    Schedule,
    Trajectory,
    is_feasible,
    measure_exposure,
    measure_makespan,
)
from .planner2 import Plan2, State2, plan_makespan2, plan_state_makespan

DEFAULT_GRAPH_BUDGET = 5000

# robot scope: (cover domain index, erosion component index) per robot
Scope = tuple[tuple[int, int], tuple[int, int]]


def _hull(points: Iterable[Point]) -> list[Point]:
    """Convex hull, counterclockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def chain(seq: Iterable[Point]) -> list[Point]:
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return lower[:-1] + upper[:-1]


def _contains_unit_square(hull: Sequence[Point]) -> bool:
    """Whether a convex region holds an axis-aligned unit square.

    Feasibility of the square's center: each counterclockwise edge with
    inward normal n admits the whole square iff n.c >= n.a plus half
    the L1 norm of n, the margin a corner of the square can lose.
    """
    if len(hull) < 3:
        return False
    prog = LpProblem()
    prog.var("cx", free=True)
    prog.var("cy", free=True)
    for a, b in zip(hull, tuple(hull[1:]) + (hull[0],)):
        nx, ny = a.y - b.y, b.x - a.x
        margin = Fraction(abs(nx) + abs(ny), 2)
        prog.add_leq({"cx": -nx, "cy": -ny}, -(nx * a.x + ny * a.y + margin))
    prog.minimize({})
    return prog.solve().status == OPTIMAL


def _convex_interiors_overlap(p: Sequence[Point], q: Sequence[Point]) -> bool:
    """Separating-axis test on counterclockwise convex polygons;
    sharing boundary only does not count as overlap."""
    if len(p) < 3 or len(q) < 3:
        return False
    for poly, other in ((p, q), (q, p)):
        for a, b in zip(poly, tuple(poly[1:]) + (poly[0],)):
            if all(orient(a, b, v) <= 0 for v in other):
                return False
    return True


def validate_cover(cover: Sequence[PolygonalDomain]) -> tuple[PolygonalDomain, ...]:
    """Check that cover domains have pairwise disjoint interiors.

    Touching boundaries are fine.  Returns the cover as a tuple, or
    raises ValueError naming the first overlapping pair.
    """
    cover = tuple(cover)
    hulls = [
        [_hull(t.corners()) for t in TrapezoidalDecomposition(dom, "h").trapezoids]
        for dom in cover
    ]
    for i in range(len(cover)):
        for j in range(i + 1, len(cover)):
            ix0, iy0, ix1, iy1 = cover[i].bbox()
            jx0, jy0, jx1, jy1 = cover[j].bbox()
            if ix1 <= jx0 or jx1 <= ix0 or iy1 <= jy0 or jy1 <= iy0:
                continue
            if any(
                _convex_interiors_overlap(hp, hq)
                for hp in hulls[i]
                for hq in hulls[j]
            ):
                raise ValueError(f"cover domains {i} and {j} overlap")
    return cover


def _cover_trapezoids(
    cover: Sequence[PolygonalDomain],
) -> tuple[list[FeasibilityStructure | None], list[tuple[Trapezoid, tuple[int, int]]]]:
    """Per-domain reachability structures and the tagged trapezoids of
    every erosion component.  Domains too small to hold the robot
    contribute nothing."""
    feas: list[FeasibilityStructure | None] = []
    for dom in cover:
        try:
            feas.append(build_feasibility(dom))
        except EmptyErosion:
            feas.append(None)
    traps: list[tuple[Trapezoid, tuple[int, int]]] = []
    for d, fs in enumerate(feas):
        if fs is None:
            continue
        for ci, dec in enumerate(fs.hdecs):
            for trap in dec.trapezoids:
                traps.append((trap, (d, ci)))
    return feas, traps


def _sigmas(trap1: Trapezoid, trap2: Trapezoid) -> tuple[int, ...]:
    """Closeness bounds making a trapezoid pair a state.

    Around the joint hull of the two trapezoids: room for a unit square
    means the robots can always sidestep each other, so the unbounded
    state works on its own.  Otherwise each axis spanning at least one
    unit admits the two one-sided states on that axis.
    """
    corners = trap1.corners()
    if trap2 != trap1:
        corners = corners + trap2.corners()
    if _contains_unit_square(_hull(corners)):
        return (0,)
    xs = [c.x for c in corners]
    ys = [c.y for c in corners]
    out: list[int] = []
    if max(xs) - min(xs) >= 1:
        out += [1, -1]
    if max(ys) - min(ys) >= 1:
        out += [2, -2]
    return tuple(out)


def build_state_vertices(cover: Sequence[PolygonalDomain]) -> list[State2]:
    """All candidate states over the cover trapezoids, before empty and
    unseparable ones are dropped."""
    _, traps = _cover_trapezoids(tuple(cover))
    return [
        State2(t1, t2, sigma)
        for t1, _ in traps
        for t2, _ in traps
        for sigma in _sigmas(t1, t2)
    ]


_DIRECTIONS = (("x", 0), ("x", 1), ("y", 0), ("y", 1))
_PREFERRED = {1: ("x", 0), -1: ("x", 1), 2: ("y", 0), -2: ("y", 1)}


def _representative(state: State2) -> Config:
    """A separated configuration inside the state.

    Pulls the robots a unit apart along each signed axis in turn, the
    state's own bound direction first, and keeps the first linear
    program reaching separation one.  NoRepresentative when none does,
    which also covers states with no configuration at all.
    """
    order = list(_DIRECTIONS)
    if state.sigma:
        pref = _PREFERRED[state.sigma]
        order.remove(pref)
        order.insert(0, pref)
    for axis, r in order:
        prog = LpProblem()
        for ax in ("x", "y"):
            for rr in (0, 1):
                prog.var(f"{ax}{rr}", free=True)
        for row, rhs in state.rows():
            prog.add_leq({f"{ax}{rr}": c for (ax, rr), c in row.items()}, rhs)
        prog.minimize({f"{axis}{r}": 1, f"{axis}{1 - r}": -1})
        res = prog.solve()
        if res.status != OPTIMAL or res.value > -1:
            continue
        config = (pt(res["x0"], res["y0"]), pt(res["x1"], res["y1"]))
        assert state.contains(config) and is_feasible(config, (UNIT, UNIT))
        return config
    raise NoRepresentative(f"no separated pair in {state}")


@dataclass(frozen=True)
class StateVertex:
    state: State2
    scope: Scope
    rep: Config


@dataclass
class ExposureGraph:
    """The state graph of a cover: vertices with their scopes and
    representatives, zero edges, and two-robot plans for the positive
    edges (keyed by vertex index pairs i < j)."""

    cover: tuple[PolygonalDomain, ...]
    vertices: list[StateVertex]
    zero_edges: set[tuple[int, int]]
    plans: dict[tuple[int, int], Plan2]
    feas: list[FeasibilityStructure | None]


def _zero_linked(
    scope_u: Scope,
    cfg_u: Config,
    scope_v: Scope,
    cfg_v: Config,
    feas: Sequence[FeasibilityStructure | None],
) -> bool:
    """Whether two covered configurations reach each other with zero
    exposure.  A covered robot can never leave its erosion component,
    so the scopes must match; robots covered by different domains can
    never collide, which settles the split case, and a shared domain
    defers to its pair reachability structure."""
    if scope_u != scope_v:
        return False
    (d1, _), (d2, _) = scope_u
    if d1 != d2:
        return True
    fs = feas[d1]
    assert fs is not None
    return fs.query_feasible(cfg_u, cfg_v)


def build_exposure_graph(
    cover: Sequence[PolygonalDomain],
    graph_budget: int | None = DEFAULT_GRAPH_BUDGET,
    threads: int = 1,
) -> ExposureGraph:
    cover = validate_cover(cover)
    feas, traps = _cover_trapezoids(cover)
    if graph_budget is not None and len(traps) ** 2 > graph_budget:
        warnings.warn(
            f"exposure graph may be large: {len(traps)}^2 trapezoid pairs"
            f" exceed the budget of {graph_budget}",
            ResourceWarning,
            stacklevel=2,
        )
    vertices: list[StateVertex] = []
    for trap1, sc1 in traps:
        for trap2, sc2 in traps:
            for sigma in _sigmas(trap1, trap2):
                state = State2(trap1, trap2, sigma)
                try:
                    rep = _representative(state)
                except NoRepresentative:
                    continue
                vertices.append(StateVertex(state, (sc1, sc2), rep))
    zero_edges: set[tuple[int, int]] = set()
    positive: list[tuple[int, int]] = []
    shapes = (UNIT, UNIT)
    for i, u in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            v = vertices[j]
            if _zero_linked(u.scope, u.rep, v.scope, v.rep, feas):
                zero_edges.add((i, j))
            else:
                positive.append((i, j))

    def edge_plan(key: tuple[int, int]) -> Plan2:
        i, j = key
        return plan_state_makespan(vertices[i].state, vertices[j].state, shapes)

    if threads > 1 and len(positive) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            plans = dict(zip(positive, pool.map(edge_plan, positive)))
    else:
        plans = {key: edge_plan(key) for key in positive}
    return ExposureGraph(cover, vertices, zero_edges, plans, feas)


def _locate_scope(
    config: Config, feas: Sequence[FeasibilityStructure | None]
) -> Scope | None:
    """Scope of a covered configuration, None if any robot is exposed.
    Interior-disjoint domains cover a robot at most once."""
    out = []
    for p in config:
        hit = None
        for d, fs in enumerate(feas):
            if fs is None:
                continue
            try:
                hit = (d, fs.component_of(p))
                break
            except NotInDomain:
                continue
        if hit is None:
            return None
        out.append(hit)
    return (out[0], out[1])


def _zero_schedule(
    feas: Sequence[FeasibilityStructure | None],
    scope: Scope,
    src: Config,
    dst: Config,
    shapes: tuple[RobotShape, ...],
) -> Schedule:
    """Witness schedule for a zero edge.  Robots covered by different
    domains move one after the other and cannot interact; a shared
    domain reconstructs through its corner pair graph."""
    (d1, _), (d2, _) = scope
    if d1 == d2:
        fs = feas[d1]
        assert fs is not None
        return fs.reconstruct_zero_exposure_schedule(src, dst)
    moves: list[Move] = []
    for r, d in ((0, d1), (1, d2)):
        fs = feas[d]
        assert fs is not None
        path = fs.single_robot_path(src[r], dst[r])
        moves.extend((r, q) for q in path[1:])
    return moves_schedule(src, moves, shapes)


def _reverse_schedule(s: Schedule) -> Schedule:
    t1 = s.t1
    return Schedule(
        s.shapes,
        tuple(
            Trajectory(tuple((t1 - t, p) for t, p in reversed(tr.breakpoints)))
            for tr in s.trajectories
        ),
    )


def _concat_schedules(
    pieces: Sequence[Schedule], start: Config, shapes: tuple[RobotShape, ...]
) -> Schedule:
    points: list[list[tuple[Fraction, Point]]] = [[(F0, p)] for p in start]
    t = F0
    for piece in pieces:
        span = piece.t1 - piece.t0
        if span == 0:
            continue
        assert piece.start == tuple(bps[-1][1] for bps in points)
        for r, tr in enumerate(piece.trajectories):
            points[r].extend((t + bt - piece.t0, p) for bt, p in tr.breakpoints)
        t += span
    return Schedule(shapes, tuple(Trajectory.from_points(bps) for bps in points))


@dataclass(frozen=True)
class ExposurePlan:
    """Exposure value from the state graph, a witness schedule, and the
    schedule's measured exposure and makespan.  The measured exposure
    never exceeds the value but can be smaller."""

    value: Fraction
    schedule: Schedule
    exposure: Fraction
    makespan: Fraction


def plan_exposure2(
    a: Config,
    b: Config,
    cover: Sequence[PolygonalDomain],
    *,
    graph: ExposureGraph | None = None,
    graph_budget: int | None = DEFAULT_GRAPH_BUDGET,
    threads: int = 1,
) -> ExposurePlan:
    """Move two unit robots from a to b minimizing exposure time.

    A prebuilt graph for the same cover can be passed to amortize the
    state construction over many queries.
    """
    a = tuple(pt(*p) for p in a)
    b = tuple(pt(*p) for p in b)
    if len(a) != 2 or len(b) != 2:
        raise ValueError("exactly two robots expected")
    shapes = (UNIT, UNIT)
    for config in (a, b):
        if not is_feasible(config, shapes):
            raise InfeasibleConfiguration(f"endpoint {config} overlaps")
    if a == b:
        sched = Schedule(shapes, tuple(Trajectory.constant(p, 0, 0) for p in a))
        return ExposurePlan(F0, sched, F0, F0)
    if graph is None:
        graph = build_exposure_graph(cover, graph_budget, threads)
    verts = graph.vertices
    n = len(verts)
    node_a, node_b = n, n + 1

    zero_edges = set(graph.zero_edges)
    plans = dict(graph.plans)
    scope_a = _locate_scope(a, graph.feas)
    scope_b = _locate_scope(b, graph.feas)
    for node, config, scope in ((node_a, a, scope_a), (node_b, b, scope_b)):
        point_state = State2.points(*config)
        for i, v in enumerate(verts):
            if scope is not None and _zero_linked(
                v.scope, v.rep, scope, config, graph.feas
            ):
                zero_edges.add((i, node))
            else:
                plans[(i, node)] = plan_state_makespan(v.state, point_state, shapes)
    if (
        scope_a is not None
        and scope_b is not None
        and _zero_linked(scope_a, a, scope_b, b, graph.feas)
    ):
        zero_edges.add((node_a, node_b))
    else:
        plans[(node_a, node_b)] = plan_makespan2(a, b, shapes)

    adjacency: dict[int, list[tuple[int, Fraction]]] = {
        u: [] for u in range(n + 2)
    }
    for i, j in zero_edges:
        adjacency[i].append((j, F0))
        adjacency[j].append((i, F0))
    for (i, j), plan in plans.items():
        adjacency[i].append((j, plan.value))
        adjacency[j].append((i, plan.value))

    # Dijkstra with a (distance, hops, vertex) tie-break
    best: dict[int, tuple[Fraction, int]] = {node_a: (F0, 0)}
    parent: dict[int, int] = {}
    heap: list[tuple[Fraction, int, int]] = [(F0, 0, node_a)]
    while heap:
        d, hops, u = heapq.heappop(heap)
        if best.get(u, None) != (d, hops):
            continue
        if u == node_b:
            break
        for v, w in adjacency[u]:
            cand = (d + w, hops + 1)
            if v not in best or cand < best[v]:
                best[v] = cand
                parent[v] = u
                heapq.heappush(heap, (cand[0], cand[1], v))
    value = best[node_b][0]

    path = [node_b]
    while path[-1] != node_a:
        path.append(parent[path[-1]])
    path.reverse()

    def scope_of(u: int) -> Scope | None:
        if u < n:
            return verts[u].scope
        return scope_a if u == node_a else scope_b

    def config_of(u: int) -> Config:
        if u < n:
            return verts[u].rep
        return a if u == node_a else b

    pieces: list[Schedule] = []
    current = a
    for u, v in zip(path, path[1:]):
        key = (min(u, v), max(u, v))
        if key in zero_edges:
            target = config_of(v)
            scope = scope_of(u)
            assert scope is not None
            pieces.append(_zero_schedule(graph.feas, scope, current, target, shapes))
            current = target
        else:
            plan = plans[key]
            sched = plan.schedule if u == key[0] else _reverse_schedule(plan.schedule)
            if current != sched.start:
                # patch within the covered state u to the leg's start
                scope = scope_of(u)
                assert scope is not None
                pieces.append(
                    _zero_schedule(graph.feas, scope, current, sched.start, shapes)
                )
            pieces.append(sched)
            current = sched.end
    assert current == b

    schedule = _concat_schedules(pieces, a, shapes)
    exposure = measure_exposure(schedule, graph.cover)
    assert exposure <= value
    return ExposurePlan(value, schedule, exposure, measure_makespan(schedule))
