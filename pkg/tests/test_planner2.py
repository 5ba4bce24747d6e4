"""Tests for the exact two-robot planners."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxplan.errors import (
    DBelowDiameter,
    InfeasibleConfiguration,
    NotCommonlyOrdered,
    StateInfeasible,
)
from boxplan.geom import Trapezoid, pt
from boxplan.model import (
    UNIT,
    RobotShape,
    diameter,
    is_feasible,
    l1_dist,
    measure_makespan,
    measure_sum,
    validate_schedule,
)
from boxplan.planner2 import (
    Plan2,
    State2,
    plan_makespan2,
    plan_sum2,
    plan_state_makespan,
    plan_state_sum,
    same_ordering_schedule,
)

U2 = (UNIT, UNIT)


def _swap(d):
    a = (pt(0, 0), pt(d, 0))
    return a, (a[1], a[0])


def test_same_ordering_schedule_basic():
    a = (pt(0, 0), pt(3, 0))
    b = (pt(1, 2), pt(4, 1))
    sched = same_ordering_schedule(a, b, U2)
    assert validate_schedule(sched) == []
    assert sched.start == a and sched.end == b
    assert measure_makespan(sched) == diameter(a, b) == 3


def test_same_ordering_schedule_rejects_swap():
    a, b = _swap(3)
    with pytest.raises(NotCommonlyOrdered):
        same_ordering_schedule(a, b, U2)


def test_same_ordering_schedule_rejects_short_deadline():
    a = (pt(0, 0), pt(3, 0))
    b = (pt(2, 0), pt(5, 0))
    with pytest.raises(DBelowDiameter):
        same_ordering_schedule(a, b, U2, d=1)


def test_same_ordering_schedule_stretched():
    a = (pt(0, 0), pt(3, 0))
    b = (pt(2, 0), pt(5, 0))
    sched = same_ordering_schedule(a, b, U2, d=10)
    assert validate_schedule(sched) == []
    assert sched.t1 == 10


def test_swap3_makespan_is_4():
    a, b = _swap(3)
    plan = plan_makespan2(a, b, U2)
    assert plan.value == 4  # crossing costs one unit over the distance 3
    assert validate_schedule(plan.schedule) == []
    assert measure_makespan(plan.schedule) == 4
    assert plan.schedule.start == a and plan.schedule.end == b
    assert len(plan.orderings) == 3


def test_swap3_sum_is_8():
    a, b = _swap(3)
    plan = plan_sum2(a, b, U2)
    assert plan.value == 8
    assert validate_schedule(plan.schedule) == []
    assert measure_sum(plan.schedule) == 8


def test_swap_family_frozen_values():
    # makespan D + 1 and sum 2D + 2 for axis swaps at distance D
    for d in (1, 2, 5):
        a, b = _swap(d)
        assert plan_makespan2(a, b, U2).value == d + 1
        assert plan_sum2(a, b, U2).value == 2 * d + 2


def test_diagonal_swap_costs_its_diameter():
    a = (pt(0, 0), pt(1, 1))
    b = (a[1], a[0])
    plan = plan_makespan2(a, b, U2)
    assert plan.value == diameter(a, b) == 2
    assert validate_schedule(plan.schedule) == []
    assert len(plan.orderings) == 2


def test_plan_same_config_is_zero():
    a = (pt(0, 0), pt(2, 0))
    plan = plan_makespan2(a, a, U2)
    assert plan.value == 0
    assert plan.schedule.t0 == plan.schedule.t1
    assert plan.schedule.start == a


def test_commonly_ordered_plan_is_direct():
    a = (pt(0, 0), pt(3, 0))
    b = (pt(1, 2), pt(4, 1))
    plan = plan_makespan2(a, b, U2)
    assert plan.value == 3
    assert len(plan.orderings) == 1
    splan = plan_sum2(a, b, U2)
    assert splan.value == sum(l1_dist(p, q) for p, q in zip(a, b)) == 5


def test_wide_robot_swap():
    shapes = (RobotShape.from_size(2, 1), RobotShape.from_size(2, 1))
    a = (pt(0, 0), pt(3, 0))
    b = (a[1], a[0])
    plan = plan_makespan2(a, b, shapes)
    # vertical detour still costs the unit height sum
    assert plan.value == 4
    assert validate_schedule(plan.schedule) == []


def test_wide_robot_overlapping_start_rejected():
    shapes = (RobotShape.from_size(2, 1), RobotShape.from_size(2, 1))
    a = (pt(0, 0), pt(1, 0))
    with pytest.raises(InfeasibleConfiguration):
        plan_makespan2(a, (a[1], a[0]), shapes)


def test_state_plan_between_boxes():
    sa = State2(Trapezoid.axis_aligned(0, 0, 0, 1, 1), Trapezoid.axis_aligned(1, 3, 0, 4, 1))
    sb = State2(Trapezoid.axis_aligned(2, 5, 0, 6, 1), Trapezoid.axis_aligned(3, 8, 0, 9, 1))
    plan = plan_state_makespan(sa, sb, U2)
    assert plan.value == 4
    assert sa.contains(plan.start)
    assert sb.contains(plan.end)
    assert validate_schedule(plan.schedule) == []
    splan = plan_state_sum(sa, sb, U2)
    assert splan.value == 8


def test_state_plan_same_state_is_zero():
    box = Trapezoid.axis_aligned(0, 0, 0, 1, 1)
    s = State2(box, Trapezoid.axis_aligned(1, 0, 0, 1, 1), sigma=1)
    plan = plan_state_makespan(s, s, U2)
    assert plan.value == 0
    assert s.contains(plan.start)
    assert is_feasible(plan.start, U2)


def test_state_sigma_constraint_respected():
    # robot 0 confined left, robot 1 right; the sigma order bound is
    # satisfied throughout the trapezoids here
    sa = State2(
        Trapezoid.axis_aligned(0, 0, 0, 1, 1),
        Trapezoid.axis_aligned(1, 4, 0, 5, 1),
        sigma=1,
    )
    assert sa.contains((pt(1, 0), pt(4, 0)))
    assert not sa.contains((pt(1, 0), pt(pt(4, 0).x, 2)))  # outside trap2
    sb = State2(
        Trapezoid.axis_aligned(0, 4, 0, 5, 1),
        Trapezoid.axis_aligned(1, 0, 0, 1, 1),
        sigma=1,
    )
    # swapped sides violate sigma = +1 everywhere: x0 - x1 >= 3 there
    with pytest.raises(StateInfeasible):
        plan_state_makespan(sa, sb, U2)


def test_state_infeasible_when_too_tight():
    half = Fraction(1, 2)
    tiny1 = Trapezoid.axis_aligned(0, 0, 0, half, half)
    tiny2 = Trapezoid.axis_aligned(1, 0, 0, half, half)
    with pytest.raises(StateInfeasible):
        plan_state_makespan(State2(tiny1, tiny2), State2(tiny1, tiny2), U2)


def test_point_states_match_config_planner():
    a = (pt(0, 0), pt(3, 0))
    b = (a[1], a[0])
    sa = State2.points(*a)
    sb = State2.points(*b)
    assert plan_state_makespan(sa, sb, U2).value == plan_makespan2(a, b, U2).value
    assert plan_state_sum(sa, sb, U2).value == plan_sum2(a, b, U2).value


@st.composite
def config_pairs(draw):
    coords = st.integers(-3, 3).map(Fraction)

    def config():
        return (pt(draw(coords), draw(coords)), pt(draw(coords), draw(coords)))

    return config(), config()


@given(config_pairs())
@settings(max_examples=40, deadline=None)
def test_plan_properties(pair):
    a, b = pair
    if not (is_feasible(a, U2) and is_feasible(b, U2)):
        return
    mplan = plan_makespan2(a, b, U2)
    assert mplan.value >= diameter(a, b)
    assert validate_schedule(mplan.schedule) == []
    assert measure_makespan(mplan.schedule) == mplan.value
    assert mplan.schedule.start == a and mplan.schedule.end == b

    splan = plan_sum2(a, b, U2)
    lower = sum(l1_dist(p, q) for p, q in zip(a, b))
    assert splan.value >= lower
    assert validate_schedule(splan.schedule) == []
    assert measure_sum(splan.schedule) == splan.value
    # a sum-optimal plan can never beat twice the makespan optimum and
    # the makespan plan bounds the sum plan's makespan from below
    assert splan.value <= 2 * measure_makespan(splan.schedule)
    assert measure_makespan(splan.schedule) >= mplan.value
