"""Corner-pair feasibility structure: build, normalize, query, replay."""

import random
from fractions import Fraction as F

import pytest

from boxplan.errors import (
    EmptyErosion,
    InfeasibleConfiguration,
    NotInDomain,
    NotReachable,
)
from boxplan.feas2 import build_feasibility
from boxplan.geom.base import Point, pt
from boxplan.geom.polygon import PolygonalDomain
from boxplan.model import UNIT, measure_exposure, validate_schedule
from boxplan.oracle import grid_feasible

U2 = (UNIT, UNIT)

WIDE = PolygonalDomain.box(0, 0, 10, 3)
NARROW = PolygonalDomain.box(0, 0, 10, "3/2")
TALL = PolygonalDomain.box(0, 0, 10, 4)
# bottom notch up to y=5/2 leaves a strip too low to pass over
NOTCHED = PolygonalDomain.from_rings(
    [
        pt(0, 0),
        pt(3, 0),
        pt(3, "5/2"),
        pt(4, "5/2"),
        pt(4, 0),
        pt(7, 0),
        pt(7, 3),
        pt(0, 3),
    ]
)


def cfg(*pts):
    return tuple(Point(F(x), F(y)) for x, y in pts)


def assert_decoupled(schedule):
    times = sorted({t for tr in schedule.trajectories for t, _ in tr.breakpoints})
    for ta, tb in zip(times, times[1:]):
        moving = sum(1 for tr in schedule.trajectories if tr.at(ta) != tr.at(tb))
        assert moving <= 1


def test_wide_structure_shape():
    f = build_feasibility(WIDE)
    assert len(f.components) == 1
    assert set(f.vstar) == {
        pt("1/2", "1/2"),
        pt("19/2", "1/2"),
        pt("19/2", "5/2"),
        pt("1/2", "5/2"),
    }
    # all ordered distinct corner pairs are separated, none coincident
    assert len(f.pairs) == 12
    assert set(f.pair_label) == {0}


def test_wide_swap_is_feasible():
    f = build_feasibility(WIDE)
    a, b = cfg((1, 1), (9, 1)), cfg((9, 1), (1, 1))
    assert f.query_feasible(a, b)
    assert grid_feasible(a, b, U2, [WIDE])


def test_narrow_swap_is_infeasible():
    f = build_feasibility(NARROW)
    a, b = cfg((1, 1), (9, 1)), cfg((9, 1), (1, 1))
    assert not f.query_feasible(a, b)
    assert not grid_feasible(a, b, U2, [NARROW])
    assert f.query_feasible(a, cfg((2, 1), (6, 1)))


def test_narrow_orders_split_components():
    f = build_feasibility(NARROW)
    left, right = pt("1/2", "1/2"), pt("19/2", "1/2")
    lab = f.pair_label
    assert lab[f.pair_ids[(left, right)]] != lab[f.pair_ids[(right, left)]]


def test_notched_domain_components():
    f = build_feasibility(NOTCHED)
    assert len(f.components) == 2
    a = cfg((1, 1), (5, 1))
    assert not f.query_feasible(a, cfg((5, 1), (1, 1)))
    assert f.query_feasible(a, cfg((2, 2), (6, 2)))
    assert not grid_feasible(a, cfg((5, 1), (1, 1)), U2, [NOTCHED])
    assert grid_feasible(a, cfg((2, 2), (6, 2)), U2, [NOTCHED])
    with pytest.raises(NotReachable):
        f.reconstruct_zero_exposure_schedule(a, cfg((5, 1), (1, 1)))


def test_swap_inside_one_notch_component():
    f = build_feasibility(NOTCHED)
    a, b = cfg((1, 1), (2, 1)), cfg((2, 1), (1, 1))
    assert f.query_feasible(a, b)
    assert grid_feasible(a, b, U2, [NOTCHED])


def test_normalize_horizontally_separated():
    f = build_feasibility(WIDE)
    corners = f.normalize_to_corner(cfg((2, "3/2"), (5, "3/2")))
    assert corners == (pt("1/2", "1/2"), pt("19/2", "1/2"))


def test_normalize_tie_picks_horizontal_separator():
    f = build_feasibility(TALL)
    # both axis gaps equal 1, so the robots part vertically
    corners = f.normalize_to_corner(cfg((2, 1), (4, 3)))
    assert corners == (pt("1/2", "1/2"), pt("1/2", "7/2"))


def test_normalize_fixpoint_on_corners():
    f = build_feasibility(WIDE)
    p = cfg(("1/2", "1/2"), ("19/2", "5/2"))
    assert f.normalize_to_corner(p) == p
    sched = f.normalization_schedule(p)
    assert sched.t1 == sched.t0


def test_normalization_schedule_is_safe():
    f = build_feasibility(WIDE)
    p = cfg((2, "3/2"), (5, "3/2"))
    sched = f.normalization_schedule(p)
    assert sched.start == p
    assert sched.end == (pt("1/2", "1/2"), pt("19/2", "1/2"))
    assert validate_schedule(sched) == []
    assert measure_exposure(sched, [WIDE]) == 0


def test_reconstruct_wide_swap():
    f = build_feasibility(WIDE)
    a, b = cfg((1, 1), (9, 1)), cfg((9, 1), (1, 1))
    sched = f.reconstruct_zero_exposure_schedule(a, b)
    assert sched.start == a and sched.end == b
    assert validate_schedule(sched) == []
    assert measure_exposure(sched, [WIDE]) == 0
    assert_decoupled(sched)


def test_reconstruct_same_config_is_stationary():
    f = build_feasibility(WIDE)
    a = cfg((2, 1), (5, 2))
    sched = f.reconstruct_zero_exposure_schedule(a, a)
    assert sched.start == a and sched.end == a


def test_single_robot_path_stays_inside():
    f = build_feasibility(NOTCHED)
    path = f.single_robot_path(pt(1, 1), pt(2, 2))
    assert path[0] == pt(1, 1) and path[-1] == pt(2, 2)
    comp = f.components[f.component_of(pt(1, 1))]
    for u, v in zip(path, path[1:]):
        assert comp.segment_inside_params(u, v) == [(F(0), F(1))]
    with pytest.raises(NotReachable):
        f.single_robot_path(pt(1, 1), pt(5, 1))


def test_build_rejects_too_small_domains():
    with pytest.raises(EmptyErosion):
        build_feasibility(PolygonalDomain.box(0, 0, "4/5", "4/5"))


def test_normalize_rejects_bad_configs():
    f = build_feasibility(WIDE)
    with pytest.raises(NotInDomain):
        f.normalize_to_corner(cfg((2, 1), (20, 1)))
    with pytest.raises(InfeasibleConfiguration):
        f.normalize_to_corner(cfg((2, 1), ("5/2", 1)))


def test_queries_match_grid_oracle_on_random_boxes():
    rng = random.Random(7)
    for _ in range(8):
        w = rng.randint(4, 8)
        h = F(rng.choice([3, 4, 5]), 2)
        dom = PolygonalDomain.box(0, 0, w, h)
        f = build_feasibility(dom)
        a = cfg((1, "1/2" if h < 2 else 1), (w - 1, "1/2" if h < 2 else 1))
        b = (a[1], a[0])
        assert f.query_feasible(a, b) == grid_feasible(a, b, U2, [dom])
        if f.query_feasible(a, b):
            sched = f.reconstruct_zero_exposure_schedule(a, b)
            assert validate_schedule(sched) == []
            assert measure_exposure(sched, [dom]) == 0
