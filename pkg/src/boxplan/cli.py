"""Command-line front end.

Subcommands: ``plan`` (makespan, sum, or exposure), ``feasibility``,
``verify`` (schedule against an instance), ``oracle`` (lattice
reference values), ``render`` (SVG), and ``graph`` (DOT dumps).

Machine-readable output is JSON on stdout with sorted keys and every
rational as an exact ``p/q`` string, so identical inputs give
byte-identical output.  Exit codes: 0 for a positive answer, 2 for a
negative one (infeasible, unreachable, failed verification), 1 for bad
input or an exhausted search budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .errors import (
    BoxplanError,
    BudgetExceeded,
    EmptyErosion,
    InfeasibleConfiguration,
    NotInDomain,
    NotLatticeExact,
    NotReachable,
    ResourceBound,
    StateInfeasible,
    Unreachable,
)
from .exposure import DEFAULT_GRAPH_BUDGET, build_exposure_graph, plan_exposure2
from .feas2 import build_feasibility
from .geom.base import Point, pt, rat
from .geom.polygon import PolygonalDomain
from .model import (
    UNIT,
    Config,
    RobotShape,
    Schedule,
    covered_intervals,
    measure_exposure,
    measure_makespan,
    measure_sum,
    schedule_from_obj,
    schedule_to_obj,
    validate_schedule,
)
from .oracle import grid_exposure, grid_feasible, grid_makespan, grid_sum
from .orderings import adjacent, all_orderings
from .planner2 import plan_makespan2, plan_sum2
from .plannerk import DEFAULT_LP_BUDGET, DEFAULT_MAX_EDGES, plan_makespan_k, plan_sum_k
from .render import render_schedule_svg


class InstanceError(ValueError):
    """Malformed instance or flag input; the message names the field."""


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InstanceError(f"{where}: expected an integer or a rational string")
    try:
        return rat(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceError(f"{where}: {exc}") from exc


def _point(obj: Any, where: str) -> Point:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise InstanceError(f"{where}: expected [x, y]")
    return Point(_rational(obj[0], f"{where}[0]"), _rational(obj[1], f"{where}[1]"))


def _polygon(obj: Any, where: str) -> PolygonalDomain:
    if not isinstance(obj, dict) or "outer" not in obj:
        raise InstanceError(f'{where}: expected {{"outer": [[x,y],...], "holes": [...]}}')
    outer = obj["outer"]
    holes = obj.get("holes", [])
    if not isinstance(outer, list) or not isinstance(holes, list):
        raise InstanceError(f"{where}: outer and holes must be lists")
    try:
        return PolygonalDomain.from_rings(
            [_point(p, f"{where}.outer[{i}]") for i, p in enumerate(outer)],
            [
                [_point(p, f"{where}.holes[{i}][{j}]") for j, p in enumerate(ring)]
                for i, ring in enumerate(holes)
            ],
        )
    except ValueError as exc:
        raise InstanceError(f"{where}: {exc}") from exc


@dataclass
class Instance:
    """One planning problem: endpoints per robot plus optional regions."""

    starts: Config
    targets: Config
    shapes: tuple[RobotShape, ...]
    cover: tuple[PolygonalDomain, ...] = ()
    domain: PolygonalDomain | None = None
    metadata: dict = field(default_factory=dict)


def parse_instance(obj: Any) -> Instance:
    if not isinstance(obj, dict):
        raise InstanceError("instance: expected a JSON object")
    robots = obj.get("robots")
    if not isinstance(robots, list) or not robots:
        raise InstanceError("robots: expected a non-empty list")
    starts, targets, shapes = [], [], []
    for i, robot in enumerate(robots):
        if not isinstance(robot, dict):
            raise InstanceError(f"robots[{i}]: expected an object")
        starts.append(_point(robot.get("start"), f"robots[{i}].start"))
        targets.append(_point(robot.get("target"), f"robots[{i}].target"))
        size = robot.get("shape", [1, 1])
        if not isinstance(size, (list, tuple)) or len(size) != 2:
            raise InstanceError(f"robots[{i}].shape: expected [width, height]")
        w = _rational(size[0], f"robots[{i}].shape[0]")
        h = _rational(size[1], f"robots[{i}].shape[1]")
        if w <= 0 or h <= 0:
            raise InstanceError(f"robots[{i}].shape: sides must be positive")
        shapes.append(RobotShape.from_size(w, h))
    cover_obj = obj.get("cover", [])
    if not isinstance(cover_obj, list):
        raise InstanceError("cover: expected a list of polygons")
    cover = tuple(_polygon(p, f"cover[{i}]") for i, p in enumerate(cover_obj))
    domain = _polygon(obj["domain"], "domain") if "domain" in obj else None
    metadata = obj.get("metadata", {})
    if not isinstance(metadata, dict):
        raise InstanceError("metadata: expected an object")
    return Instance(tuple(starts), tuple(targets), tuple(shapes), cover, domain, metadata)


def _load_json(path: str) -> Any:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as handle:
        return json.load(handle)


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as handle:
            handle.write(text)


def _parse_config_flag(text: str, where: str) -> Config:
    points = []
    for i, chunk in enumerate(text.split(";")):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise InstanceError(f"{where}: expected 'x,y;x,y;...'")
        points.append(_point(parts, f"{where}[{i}]"))
    return tuple(points)


def _parse_shapes_flag(text: str) -> tuple[RobotShape, ...]:
    shapes = []
    for i, chunk in enumerate(text.split(";")):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise InstanceError("--shapes: expected 'w,h;w,h;...'")
        w = _rational(parts[0], f"--shapes[{i}].width")
        h = _rational(parts[1], f"--shapes[{i}].height")
        if w <= 0 or h <= 0:
            raise InstanceError(f"--shapes[{i}]: sides must be positive")
        shapes.append(RobotShape.from_size(w, h))
    return tuple(shapes)


def _load_cover(path: str) -> tuple[PolygonalDomain, ...]:
    obj = _load_json(path)
    if isinstance(obj, dict) and "cover" in obj:
        obj = obj["cover"]
    if not isinstance(obj, list):
        raise InstanceError("--cover: expected a list of polygons")
    return tuple(_polygon(p, f"cover[{i}]") for i, p in enumerate(obj))


def _load_domain(path: str) -> PolygonalDomain:
    obj = _load_json(path)
    if isinstance(obj, dict) and "domain" in obj:
        obj = obj["domain"]
    return _polygon(obj, "domain")


def _schedule_payload(obj: Any) -> tuple[Schedule, dict]:
    """A schedule plus whatever plan envelope it arrived in, so plan
    output can be piped straight into verify or render."""
    if isinstance(obj, dict) and "schedule" in obj and "trajectories" not in obj:
        envelope = obj
        obj = obj["schedule"]
    else:
        envelope = {}
    try:
        return schedule_from_obj(obj), envelope
    except (KeyError, TypeError, ValueError, BoxplanError) as exc:
        raise InstanceError(f"schedule: {exc}") from exc


def _instance_from_args(args: argparse.Namespace) -> Instance:
    inst = parse_instance(_load_json(args.instance))
    if getattr(args, "shapes", None):
        shapes = _parse_shapes_flag(args.shapes)
        if len(shapes) != len(inst.shapes):
            raise InstanceError("--shapes: wrong number of robots")
        inst.shapes = shapes
    if getattr(args, "cover", None):
        inst.cover = _load_cover(args.cover)
    return inst


def _cmd_plan(args: argparse.Namespace) -> int:
    inst = _instance_from_args(args)
    k = len(inst.starts)
    out: dict[str, Any] = {"objective": args.objective}
    if args.objective == "exposure":
        if k != 2:
            raise InstanceError("--objective exposure: exactly two robots supported")
        if inst.shapes != (UNIT, UNIT):
            raise InstanceError("--objective exposure: unit robots required")
        plan = plan_exposure2(
            inst.starts,
            inst.targets,
            inst.cover,
            graph_budget=args.graph_budget,
            threads=args.threads,
        )
        out["value"] = str(plan.value)
        out["schedule"] = schedule_to_obj(plan.schedule)
        out["exposure_measured"] = str(plan.exposure)
        out["makespan_measured"] = str(plan.makespan)
    elif k == 2:
        planner = plan_makespan2 if args.objective == "makespan" else plan_sum2
        plan2 = planner(inst.starts, inst.targets, inst.shapes)
        out["value"] = str(plan2.value)
        out["schedule"] = schedule_to_obj(plan2.schedule)
        out[f"{args.objective}_measured"] = str(
            measure_makespan(plan2.schedule)
            if args.objective == "makespan"
            else measure_sum(plan2.schedule)
        )
    else:
        planner_k = plan_makespan_k if args.objective == "makespan" else plan_sum_k
        plank = planner_k(
            inst.starts, inst.targets, inst.shapes, args.max_path_len, args.lp_budget
        )
        out["value"] = str(plank.value)
        out["schedule"] = schedule_to_obj(plank.schedule)
        out["exact"] = plank.exact
        out[f"{args.objective}_measured"] = str(
            measure_makespan(plank.schedule)
            if args.objective == "makespan"
            else measure_sum(plank.schedule)
        )
    _emit(_dump(out), args.out)
    return 0


def _cmd_feasibility(args: argparse.Namespace) -> int:
    if args.instance:
        inst = _instance_from_args(args)
        domain = inst.domain
        starts, targets, shapes = inst.starts, inst.targets, inst.shapes
    else:
        if not (args.domain and args.start and args.target):
            raise InstanceError(
                "feasibility: --instance or all of --domain/--start/--target required"
            )
        starts = _parse_config_flag(args.start, "--start")
        targets = _parse_config_flag(args.target, "--target")
        shapes = (
            _parse_shapes_flag(args.shapes) if args.shapes else (UNIT,) * len(starts)
        )
        domain = None
    if args.domain:
        domain = _load_domain(args.domain)
    if domain is None:
        raise InstanceError("feasibility: a domain is required")
    if len(starts) != 2 or len(targets) != 2 or len(shapes) != 2:
        raise InstanceError("feasibility: exactly two robots supported")
    if shapes[0] != shapes[1]:
        raise InstanceError("feasibility: both robots must share one shape")
    structure = build_feasibility(domain, shapes[0])
    feasible = structure.query_feasible(starts, targets)
    out: dict[str, Any] = {"feasible": feasible}
    if feasible:
        out["schedule"] = schedule_to_obj(
            structure.reconstruct_zero_exposure_schedule(starts, targets)
        )
    _emit(_dump(out), args.out)
    return 0 if feasible else 2


def _stays_inside(schedule: Schedule, domain: PolygonalDomain) -> bool:
    window = [(schedule.t0, schedule.t1)]
    return all(
        covered_intervals(tr, shape, [domain]) == window
        for tr, shape in zip(schedule.trajectories, schedule.shapes)
    )


def _cmd_verify(args: argparse.Namespace) -> int:
    inst = _instance_from_args(args)
    schedule, envelope = _schedule_payload(_load_json(args.schedule))
    violations = validate_schedule(schedule)
    checks: dict[str, Any] = {
        "schedule_valid": not violations,
        "endpoints_match": schedule.start == inst.starts
        and schedule.end == inst.targets,
        "shapes_match": schedule.shapes == inst.shapes,
    }
    if inst.domain is not None:
        checks["stays_in_domain"] = _stays_inside(schedule, inst.domain)
    measured: dict[str, str] = {
        "makespan": str(measure_makespan(schedule)),
        "sum": str(measure_sum(schedule)),
    }
    if inst.cover:
        measured["exposure"] = str(measure_exposure(schedule, inst.cover))
    if "value" in envelope and "objective" in envelope:
        value = _rational(envelope["value"], "schedule.value")
        objective = envelope["objective"]
        if objective not in ("makespan", "sum", "exposure"):
            raise InstanceError(f"schedule.objective: unknown objective {objective!r}")
        got = _rational(
            measured["exposure" if objective == "exposure" else objective],
            "measured",
        )
        # an exposure witness may beat its graph value, never exceed it
        checks["objective_attained"] = got <= value if objective == "exposure" else got == value
    ok = all(checks.values())
    out = {
        "checks": checks,
        "measured": measured,
        "ok": ok,
        "violations": [
            {
                "detail": v.detail,
                "kind": v.kind,
                "robots": list(v.robots),
                "time": str(v.time),
            }
            for v in violations
        ],
    }
    _emit(_dump(out), args.out)
    return 0 if ok else 2


def _cmd_oracle(args: argparse.Namespace) -> int:
    inst = _instance_from_args(args)
    step = _rational(args.step, "--step")
    out: dict[str, Any]
    if args.objective == "feasibility":
        if args.domain:
            inst.domain = _load_domain(args.domain)
        if inst.domain is None:
            raise InstanceError("oracle feasibility: a domain is required")
        feasible = grid_feasible(
            inst.starts, inst.targets, inst.shapes, [inst.domain], step, args.budget
        )
        _emit(_dump({"feasible": feasible, "step": str(step)}), args.out)
        return 0 if feasible else 2
    if args.objective == "exposure":
        value = grid_exposure(
            inst.starts, inst.targets, inst.shapes, inst.cover, step, budget=args.budget
        )
    elif args.objective == "makespan":
        value = grid_makespan(inst.starts, inst.targets, inst.shapes, step, budget=args.budget)
    else:
        value = grid_sum(inst.starts, inst.targets, inst.shapes, step, budget=args.budget)
    out = {"objective": args.objective, "step": str(step), "value": str(value)}
    _emit(_dump(out), args.out)
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    inst = _instance_from_args(args)
    schedule, _ = _schedule_payload(_load_json(args.schedule))
    svg = render_schedule_svg(schedule, inst.cover, inst.domain, scale=args.scale)
    _emit(svg, args.out)
    return 0


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _cmd_graph(args: argparse.Namespace) -> int:
    lines = []
    if args.kind == "orderings":
        orderings = list(all_orderings(args.k))
        lines.append(f"graph orderings_k{args.k} {{")
        for i, o in enumerate(orderings):
            lines.append(f'  n{i} [label="{_dot_escape(str(o))}"];')
        for i, o1 in enumerate(orderings):
            for j in range(i + 1, len(orderings)):
                if adjacent(o1, orderings[j]):
                    lines.append(f"  n{i} -- n{j};")
        lines.append("}")
    else:
        if not args.instance:
            raise InstanceError("graph --kind exposure: --instance required")
        inst = _instance_from_args(args)
        graph = build_exposure_graph(inst.cover, args.graph_budget, args.threads)
        lines.append("graph exposure {")
        for i, v in enumerate(graph.vertices):
            (d1, c1), (d2, c2) = v.scope
            label = f"r0=S{d1}.{c1} r1=S{d2}.{c2} sigma={v.state.sigma}"
            lines.append(f'  s{i} [label="{_dot_escape(label)}"];')
        for i, j in sorted(graph.zero_edges):
            lines.append(f'  s{i} -- s{j} [label="0" style="bold"];')
        for (i, j), plan in sorted(graph.plans.items()):
            lines.append(f'  s{i} -- s{j} [label="{plan.value}"];')
        lines.append("}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxplan", description="Exact coordinated motion planning for box robots."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, instance_required: bool = True) -> None:
        p.add_argument("--instance", required=instance_required,
                       help="instance JSON file, '-' for stdin")
        p.add_argument("--shapes", help="override robot sizes: 'w,h;w,h;...'")
        p.add_argument("--cover", help="polygon list JSON overriding the instance cover")
        p.add_argument("--out", help="output file, default stdout")

    plan = sub.add_parser("plan", help="compute an optimal schedule")
    common(plan)
    plan.add_argument("--objective", choices=("makespan", "sum", "exposure"),
                      default="makespan")
    plan.add_argument("--max-path-len", type=int, default=DEFAULT_MAX_EDGES,
                      help="ordering-path edge bound for three or more robots")
    plan.add_argument("--lp-budget", type=int, default=DEFAULT_LP_BUDGET)
    plan.add_argument("--graph-budget", type=int, default=DEFAULT_GRAPH_BUDGET,
                      help="warn when trapezoid pairs exceed this count")
    plan.add_argument("--threads", type=int, default=1,
                      help="worker threads for exposure-graph edges")
    plan.set_defaults(handler=_cmd_plan)

    feas = sub.add_parser("feasibility", help="two robots inside one domain")
    common(feas, instance_required=False)
    feas.add_argument("--domain", help="domain polygon JSON file")
    feas.add_argument("--start", help="start configuration 'x,y;x,y'")
    feas.add_argument("--target", help="target configuration 'x,y;x,y'")
    feas.set_defaults(handler=_cmd_feasibility)

    verify = sub.add_parser("verify", help="check a schedule against an instance")
    common(verify)
    verify.add_argument("--schedule", required=True,
                        help="schedule or plan-output JSON, '-' for stdin")
    verify.set_defaults(handler=_cmd_verify)

    oracle = sub.add_parser("oracle", help="brute-force lattice reference values")
    common(oracle)
    oracle.add_argument("--objective",
                        choices=("makespan", "sum", "feasibility", "exposure"),
                        default="makespan")
    oracle.add_argument("--domain", help="domain polygon JSON (feasibility)")
    oracle.add_argument("--step", default="1/2", help="lattice step, default 1/2")
    oracle.add_argument("--budget", type=int, default=300_000)
    oracle.set_defaults(handler=_cmd_oracle)

    render = sub.add_parser("render", help="draw a schedule as SVG")
    common(render)
    render.add_argument("--schedule", required=True)
    render.add_argument("--scale", type=int, default=48, help="pixels per unit")
    render.set_defaults(handler=_cmd_render)

    graph = sub.add_parser("graph", help="DOT dump of a planning graph")
    common(graph, instance_required=False)
    graph.add_argument("--kind", choices=("orderings", "exposure"),
                       default="orderings")
    graph.add_argument("--k", type=int, default=2, help="robot count (orderings)")
    graph.add_argument("--graph-budget", type=int, default=DEFAULT_GRAPH_BUDGET)
    graph.add_argument("--threads", type=int, default=1)
    graph.set_defaults(handler=_cmd_graph)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (InstanceError, NotLatticeExact) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"input error: invalid JSON: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except (BudgetExceeded, ResourceBound) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 1
    except (
        EmptyErosion,
        InfeasibleConfiguration,
        NotInDomain,
        NotReachable,
        StateInfeasible,
        Unreachable,
    ) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
