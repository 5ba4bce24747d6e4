"""Relative orderings of robot pairs and their transition graph.

An ordering assigns each robot pair one separating relation: one robot
is fully left of, right of, below, or above the other, with the gap the
shapes require.  Orderings are the combinatorial states of the path
planners: within one ordering the separation constraints are linear,
and a transition between orderings is safe exactly when no pair jumps
to the opposite relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InfeasibleConfiguration, ResourceBound
from .geom.base import Point
from .model import RobotShape

MAX_ROBOTS = 4


class Rel(IntEnum):
    """Relation of robot i to robot j for a pair (i, j) with i < j."""

    LEFT = 0
    RIGHT = 1
    BELOW = 2
    ABOVE = 3

    @property
    def opposite(self) -> "Rel":
        return Rel(self.value ^ 1)

    @property
    def axis(self) -> str:
        return "x" if self.value < 2 else "y"


def robot_pairs(k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(k) for j in range(i + 1, k)]


@dataclass(frozen=True)
class Ordering:
    k: int
    rels: tuple[Rel, ...]

    def __post_init__(self) -> None:
        if len(self.rels) != self.k * (self.k - 1) // 2:
            raise ValueError("one relation per robot pair required")

    def rel(self, i: int, j: int) -> Rel:
        return self.rels[robot_pairs(self.k).index((i, j))]

    def separations(self, shapes: Sequence[RobotShape]) -> Iterator[tuple[str, int, int, Fraction]]:
        """Rows (axis, lo, hi, sep) meaning coord[lo] + sep <= coord[hi]."""
        for (i, j), rel in zip(robot_pairs(self.k), self.rels):
            if rel.axis == "x":
                sep = shapes[i].half_width + shapes[j].half_width
            else:
                sep = shapes[i].half_height + shapes[j].half_height
            lo, hi = (i, j) if rel in (Rel.LEFT, Rel.BELOW) else (j, i)
            yield rel.axis, lo, hi, sep

    def contains(self, config: Sequence[Point], shapes: Sequence[RobotShape]) -> bool:
        for axis, lo, hi, sep in self.separations(shapes):
            a, b = config[lo], config[hi]
            if (b.x - a.x if axis == "x" else b.y - a.y) < sep:
                return False
        return True

    def is_realizable(self) -> bool:
        """True iff some configuration satisfies the ordering.

        Each axis imposes strict precedence constraints; they are
        satisfiable iff the per-axis precedence digraph is acyclic, and
        the two axes never interact.
        """
        for axis in ("x", "y"):
            succ: dict[int, list[int]] = {i: [] for i in range(self.k)}
            for (i, j), rel in zip(robot_pairs(self.k), self.rels):
                if rel.axis != axis:
                    continue
                lo, hi = (i, j) if rel in (Rel.LEFT, Rel.BELOW) else (j, i)
                succ[lo].append(hi)
            state: dict[int, int] = {}  # 1 on stack, 2 done

            def has_cycle(v: int) -> bool:
                state[v] = 1
                for w in succ[v]:
                    s = state.get(w)
                    if s == 1 or (s is None and has_cycle(w)):
                        return True
                state[v] = 2
                return False

            if any(state.get(v) is None and has_cycle(v) for v in range(self.k)):
                return False
        return True

    def __str__(self) -> str:
        names = {Rel.LEFT: "<x", Rel.RIGHT: ">x", Rel.BELOW: "<y", Rel.ABOVE: ">y"}
        return ",".join(
            f"{i}{names[rel]}{j}"
            for (i, j), rel in zip(robot_pairs(self.k), self.rels)
        )


def all_orderings(k: int) -> Iterator[Ordering]:
    """Every realizable ordering of k robots, lexicographic order."""
    if k > MAX_ROBOTS:
        raise ResourceBound(f"orderings are enumerated only up to {MAX_ROBOTS} robots")
    m = k * (k - 1) // 2
    for rels in product(tuple(Rel), repeat=m):
        o = Ordering(k, rels)
        if o.is_realizable():
            yield o


def orderings_containing(config: Sequence[Point], shapes: Sequence[RobotShape]) -> list[Ordering]:
    """All orderings the configuration satisfies (it may sit on the
    boundary of several)."""
    k = len(config)
    options: list[list[Rel]] = []
    for i, j in robot_pairs(k):
        sep_x = shapes[i].half_width + shapes[j].half_width
        sep_y = shapes[i].half_height + shapes[j].half_height
        dx = config[j].x - config[i].x
        dy = config[j].y - config[i].y
        fits = [
            rel
            for rel, ok in (
                (Rel.LEFT, dx >= sep_x),
                (Rel.RIGHT, -dx >= sep_x),
                (Rel.BELOW, dy >= sep_y),
                (Rel.ABOVE, -dy >= sep_y),
            )
            if ok
        ]
        if not fits:
            raise InfeasibleConfiguration(
                f"robots {i} and {j} are not separated (dx={dx}, dy={dy})"
            )
        options.append(fits)
    return [Ordering(k, rels) for rels in product(*options)]


def adjacent(o1: Ordering, o2: Ordering) -> bool:
    """Transition allowed: distinct, and no pair flips to its opposite."""
    if o1 == o2:
        return False
    return all(a != b.opposite for a, b in zip(o1.rels, o2.rels))


def neighbors(o: Ordering) -> list[Ordering]:
    """Adjacent realizable orderings; each pair keeps its relation or
    switches to the perpendicular axis."""
    per_pair = [(r, *(x for x in Rel if x.axis != r.axis)) for r in o.rels]
    out = []
    for rels in product(*per_pair):
        if rels == o.rels:
            continue
        cand = Ordering(o.k, rels)
        if cand.is_realizable():
            out.append(cand)
    return out


def enumerate_simple_paths(
    starts: Iterable[Ordering],
    ends: Iterable[Ordering],
    max_edges: int,
    neighbor_fn: Callable[[Ordering], list[Ordering]] = neighbors,
) -> Iterator[list[Ordering]]:
    """Simple paths from a start to an end, shortest first."""
    ends = set(ends)
    frontier: list[list[Ordering]] = [[s] for s in sorted(starts, key=lambda o: o.rels)]
    while frontier:
        next_frontier: list[list[Ordering]] = []
        for path in frontier:
            if path[-1] in ends:
                yield path
        if len(frontier[0]) > max_edges:
            return
        for path in frontier:
            on_path = set(path)
            for nxt in neighbor_fn(path[-1]):
                if nxt not in on_path:
                    next_frontier.append(path + [nxt])
        frontier = next_frontier
