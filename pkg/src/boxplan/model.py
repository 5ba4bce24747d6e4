"""Robots, configurations, trajectories, schedules, and exact measurements.

A configuration is a tuple of center points; robot shapes travel
alongside as a tuple of ``RobotShape``.  Robots i and j are separated
when max(|dx| - (wi+wj)/2, |dy| - (hi+hj)/2) >= 0; touching is legal.
Every robot moves at L1 speed at most 1.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import MismatchedIntervals
from .geom import PolygonalDomain, inner_minkowski
from .geom.base import (
    Point,
    complement_intervals,
    l1_dist,
    merge_intervals,
    pt,
    rat,
    RatLike,
    violation_onset,
)


class RobotShape(NamedTuple):
    """Axis-aligned box robot, stored as half extents."""

    half_width: Fraction
    half_height: Fraction

    @classmethod
    def from_size(cls, width: RatLike, height: RatLike) -> "RobotShape":
        w, h = rat(width), rat(height)
        if w <= 0 or h <= 0:
            raise ValueError("robot sides must be positive")
        return cls(w / 2, h / 2)

    @property
    def width(self) -> Fraction:
        return 2 * self.half_width

    @property
    def height(self) -> Fraction:
        return 2 * self.half_height


UNIT = RobotShape(Fraction(1, 2), Fraction(1, 2))

Config = tuple[Point, ...]


def pair_gap(p: Point, q: Point, sp: RobotShape, sq: RobotShape) -> Fraction:
    """Separation slack of two placed robots; negative means overlap."""
    return max(
        abs(p.x - q.x) - (sp.half_width + sq.half_width),
        abs(p.y - q.y) - (sp.half_height + sq.half_height),
    )


def is_feasible(config: Sequence[Point], shapes: Sequence[RobotShape]) -> bool:
    k = len(config)
    return all(
        pair_gap(config[i], config[j], shapes[i], shapes[j]) >= 0
        for i in range(k)
        for j in range(i + 1, k)
    )


def diameter(a: Sequence[Point], b: Sequence[Point]) -> Fraction:
    """Largest single-robot L1 distance between two configurations."""
    return max(l1_dist(p, q) for p, q in zip(a, b))


@dataclass(frozen=True)
class Trajectory:
    """Piecewise-linear motion: breakpoints (time, position), times
    strictly increasing.  A single breakpoint is a zero-length window."""

    breakpoints: tuple[tuple[Fraction, Point], ...]

    def __post_init__(self) -> None:
        if not self.breakpoints:
            raise ValueError("trajectory needs at least one breakpoint")
        times = [t for t, _ in self.breakpoints]
        if any(t1 <= t0 for t0, t1 in zip(times, times[1:])):
            raise ValueError("breakpoint times must strictly increase")

    @classmethod
    def from_points(cls, points: Iterable[tuple[RatLike, Point]]) -> "Trajectory":
        """Build from breakpoints that may repeat a time; a repeated
        time must not move the robot."""
        raw: list[tuple[Fraction, Point]] = []
        for t, p in points:
            t = rat(t)
            if raw and raw[-1][0] == t:
                if raw[-1][1] != p:
                    raise ValueError(f"teleport at t={t}")
                continue
            raw.append((t, p))
        return cls(tuple(raw))

    @classmethod
    def constant(cls, p: Point, t0: RatLike, t1: RatLike) -> "Trajectory":
        t0, t1 = rat(t0), rat(t1)
        if t0 == t1:
            return cls(((t0, p),))
        return cls(((t0, p), (t1, p)))

    @property
    def t0(self) -> Fraction:
        return self.breakpoints[0][0]

    @property
    def t1(self) -> Fraction:
        return self.breakpoints[-1][0]

    @property
    def start(self) -> Point:
        return self.breakpoints[0][1]

    @property
    def end(self) -> Point:
        return self.breakpoints[-1][1]

    def at(self, t: RatLike) -> Point:
        t = rat(t)
        if not self.t0 <= t <= self.t1:
            raise ValueError(f"t={t} outside [{self.t0}, {self.t1}]")
        times = [bt for bt, _ in self.breakpoints]
        i = bisect_right(times, t) - 1
        if i == len(self.breakpoints) - 1:
            return self.breakpoints[-1][1]
        ta, pa = self.breakpoints[i]
        tb, pb = self.breakpoints[i + 1]
        return pa.lerp(pb, (t - ta) / (tb - ta))

    def segments(self) -> Iterable[tuple[Fraction, Point, Fraction, Point]]:
        for (ta, pa), (tb, pb) in zip(self.breakpoints, self.breakpoints[1:]):
            yield ta, pa, tb, pb

    def length(self) -> Fraction:
        return sum((l1_dist(pa, pb) for _, pa, _, pb in self.segments()), Fraction(0))

    def arrival_time(self) -> Fraction:
        """Earliest time from which the trajectory rests at its end."""
        t = self.t1
        for ta, pa, tb, pb in reversed(list(self.segments())):
            if pa == pb:
                t = ta
            else:
                return t
        return self.t0


@dataclass(frozen=True)
class Schedule:
    shapes: tuple[RobotShape, ...]
    trajectories: tuple[Trajectory, ...]

    def __post_init__(self) -> None:
        if len(self.shapes) != len(self.trajectories):
            raise ValueError("one shape per trajectory required")
        if not self.trajectories:
            raise ValueError("empty schedule")
        t0s = {tr.t0 for tr in self.trajectories}
        t1s = {tr.t1 for tr in self.trajectories}
        if len(t0s) > 1 or len(t1s) > 1:
            raise MismatchedIntervals(f"trajectory windows differ: {t0s} .. {t1s}")

    @property
    def t0(self) -> Fraction:
        return self.trajectories[0].t0

    @property
    def t1(self) -> Fraction:
        return self.trajectories[0].t1

    def at(self, t: RatLike) -> Config:
        return tuple(tr.at(t) for tr in self.trajectories)

    @property
    def start(self) -> Config:
        return tuple(tr.start for tr in self.trajectories)

    @property
    def end(self) -> Config:
        return tuple(tr.end for tr in self.trajectories)


def one_turn_trajectory(a: Point, b: Point, t0: RatLike, d: RatLike) -> Trajectory:
    """Move x first at full speed, wait, then y, inside a window of
    length d >= |ab|_1 starting at t0."""
    t0, d = rat(t0), rat(d)
    dx = abs(b.x - a.x)
    dy = abs(b.y - a.y)
    if dx + dy > d:
        raise ValueError("window shorter than the L1 distance")
    corner = Point(b.x, a.y)
    points = [
        (t0, a),
        (t0 + dx, corner),
        (t0 + d - dy, corner),
        (t0 + d, b),
    ]
    return Trajectory.from_points(points)


def chain_one_turn_schedule(
    waypoints: Sequence[Config],
    shapes: Sequence[RobotShape],
    t0: RatLike = 0,
) -> Schedule:
    """One-turn legs through the waypoints, each leg as short as its
    widest robot move; zero legs are skipped."""
    t = rat(t0)
    k = len(waypoints[0])
    durations = [diameter(waypoints[u], waypoints[u + 1]) for u in range(len(waypoints) - 1)]
    if sum(durations, Fraction(0)) == 0:
        trajs = tuple(Trajectory.constant(p, t, t) for p in waypoints[0])
        return Schedule(tuple(shapes), trajs)
    points: list[list[tuple[Fraction, Point]]] = [[] for _ in range(k)]
    for u, d in enumerate(durations):
        if d == 0:
            continue
        for r in range(k):
            leg = one_turn_trajectory(waypoints[u][r], waypoints[u + 1][r], t, d)
            points[r].extend(leg.breakpoints)
        t += d
    trajs = tuple(Trajectory.from_points(points[r]) for r in range(k))
    return Schedule(tuple(shapes), trajs)


@dataclass(frozen=True)
class Violation:
    kind: str  # "speed" or "separation"
    robots: tuple[int, ...]
    time: Fraction
    detail: str


def validate_schedule(schedule: Schedule) -> list[Violation]:
    """All speed and separation violations, earliest first per cause."""
    out: list[Violation] = []
    for i, tr in enumerate(schedule.trajectories):
        for ta, pa, tb, pb in tr.segments():
            if l1_dist(pa, pb) > tb - ta:
                out.append(Violation(
                    "speed", (i,), ta,
                    f"robot {i} needs L1 distance {l1_dist(pa, pb)} in {tb - ta}",
                ))
                break
    k = len(schedule.trajectories)
    for i in range(k):
        for j in range(i + 1, k):
            onset = _pair_violation_onset(
                schedule.trajectories[i], schedule.trajectories[j],
                schedule.shapes[i], schedule.shapes[j],
            )
            if onset is not None:
                out.append(Violation(
                    "separation", (i, j), onset,
                    f"robots {i} and {j} overlap from t={onset}",
                ))
    out.sort(key=lambda v: (v.time, v.robots))
    return out


def _pair_violation_onset(ti: Trajectory, tj: Trajectory,
                          si: RobotShape, sj: RobotShape) -> Fraction | None:
    su = si.half_width + sj.half_width
    sv = si.half_height + sj.half_height
    times = sorted({t for t, _ in ti.breakpoints} | {t for t, _ in tj.breakpoints})
    if len(times) == 1:
        t = times[0]
        p, q = ti.at(t), tj.at(t)
        ok = max(abs(p.x - q.x) - su, abs(p.y - q.y) - sv) >= 0
        return None if ok else t
    for ta, tb in zip(times, times[1:]):
        pa, pb = ti.at(ta), ti.at(tb)
        qa, qb = tj.at(ta), tj.at(tb)
        onset = violation_onset(
            pa.x - qa.x, pb.x - qb.x, pa.y - qa.y, pb.y - qb.y, su, sv,
        )
        if onset is not None:
            return ta + onset * (tb - ta)
    return None


def measure_makespan(schedule: Schedule) -> Fraction:
    """Time after t0 until every robot rests at its final position."""
    return max(tr.arrival_time() for tr in schedule.trajectories) - schedule.t0


def measure_sum(schedule: Schedule) -> Fraction:
    """Total L1 distance traveled by all robots."""
    return sum((tr.length() for tr in schedule.trajectories), Fraction(0))


@lru_cache(maxsize=None)
def erosion_components(domain: PolygonalDomain, shape: RobotShape) -> tuple[PolygonalDomain, ...]:
    """Centers at which the robot fits inside the domain, cached."""
    return tuple(inner_minkowski(domain, shape.half_width, shape.half_height))


def is_covered_point(p: Point, shape: RobotShape, cover: Sequence[PolygonalDomain]) -> bool:
    """True iff the robot box at center p lies inside one cover domain."""
    return any(
        comp.point_in_domain(p) >= 0
        for dom in cover
        for comp in erosion_components(dom, shape)
    )


def covered_intervals(tr: Trajectory, shape: RobotShape,
                      cover: Sequence[PolygonalDomain]) -> list[tuple[Fraction, Fraction]]:
    """Time intervals during which the robot stays inside the cover."""
    out: list[tuple[Fraction, Fraction]] = []
    components = [c for dom in cover for c in erosion_components(dom, shape)]
    if len(tr.breakpoints) == 1:
        t, p = tr.breakpoints[0]
        if any(c.point_in_domain(p) >= 0 for c in components):
            out.append((t, t))
        return out
    for ta, pa, tb, pb in tr.segments():
        span = tb - ta
        for comp in components:
            for lo, hi in comp.segment_inside_params(pa, pb):
                out.append((ta + lo * span, ta + hi * span))
    return merge_intervals(out)


def _length_over(tr: Trajectory, a: Fraction, b: Fraction) -> Fraction:
    total = Fraction(0)
    for ta, pa, tb, pb in tr.segments():
        lo, hi = max(ta, a), min(tb, b)
        if lo < hi and tb > ta:
            total += l1_dist(pa, pb) * (hi - lo) / (tb - ta)
    return total


def measure_exposure(schedule: Schedule, cover: Sequence[PolygonalDomain]) -> Fraction:
    """Exposure of a schedule: per maximal interval during which not
    every robot is covered, the longest distance any robot travels."""
    window = (schedule.t0, schedule.t1)
    if window[0] == window[1]:
        return Fraction(0)
    exposed: list[tuple[Fraction, Fraction]] = []
    for tr, shape in zip(schedule.trajectories, schedule.shapes):
        exposed.extend(complement_intervals(window, covered_intervals(tr, shape, cover)))
    total = Fraction(0)
    for a, b in merge_intervals(exposed):
        total += max(_length_over(tr, a, b) for tr in schedule.trajectories)
    return total


def schedule_to_obj(schedule: Schedule) -> dict:
    return {
        "t0": str(schedule.t0),
        "t1": str(schedule.t1),
        "shapes": [[str(s.width), str(s.height)] for s in schedule.shapes],
        "trajectories": [
            [{"t": str(t), "x": str(p.x), "y": str(p.y)} for t, p in tr.breakpoints]
            for tr in schedule.trajectories
        ],
    }


def schedule_from_obj(obj: dict) -> Schedule:
    shapes = tuple(RobotShape.from_size(w, h) for w, h in obj["shapes"])
    trajectories = tuple(
        Trajectory.from_points((bp["t"], pt(bp["x"], bp["y"])) for bp in bps)
        for bps in obj["trajectories"]
    )
    return Schedule(shapes, trajectories)
