"""Tests for the fleet planner and its agreement with the two-robot one."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxplan.errors import ResourceBound
from boxplan.geom import Trapezoid, pt
from boxplan.model import (
    UNIT,
    diameter,
    is_feasible,
    l1_dist,
    measure_makespan,
    measure_sum,
    validate_schedule,
)
from boxplan.planner2 import (
    State2,
    plan_makespan2,
    plan_state_makespan,
    plan_state_sum,
    plan_sum2,
)
from boxplan.plannerk import (
    plan_makespan_k,
    plan_state_makespan_k,
    plan_state_sum_k,
    plan_sum_k,
)


def _units(k):
    return (UNIT,) * k


def test_swap3_matches_two_robot_planner():
    a = (pt(0, 0), pt(3, 0))
    b = (a[1], a[0])
    plan = plan_makespan_k(a, b, _units(2))
    assert plan.value == 4
    assert plan.exact
    assert validate_schedule(plan.schedule) == []
    splan = plan_sum_k(a, b, _units(2))
    assert splan.value == 8
    assert splan.exact


def test_bystander_swap_is_exact():
    # the swapping pair forces distance + 1; the spectator is far away
    a = (pt(0, 0), pt(3, 0), pt(10, 10))
    b = (pt(3, 0), pt(0, 0), pt(10, 12))
    plan = plan_makespan_k(a, b, _units(3))
    assert plan.value == 4
    assert plan.exact
    assert validate_schedule(plan.schedule) == []
    assert plan.start == a and plan.end == b


def test_bystander_swap_sum_is_exact():
    a = (pt(0, 0), pt(3, 0), pt(10, 10))
    b = (pt(3, 0), pt(0, 0), pt(10, 12))
    plan = plan_sum_k(a, b, _units(3))
    assert plan.value == 10  # 2*3 + 2 for the swap, plus 2 spectator
    assert plan.exact
    assert validate_schedule(plan.schedule) == []


def test_commonly_ordered_triple_direct():
    a = (pt(0, 0), pt(2, 0), pt(4, 0))
    b = (pt(1, 3), pt(3, 3), pt(5, 3))
    plan = plan_makespan_k(a, b, _units(3))
    assert plan.value == diameter(a, b) == 4
    assert plan.exact
    assert len(plan.orderings) == 1
    assert validate_schedule(plan.schedule) == []


def test_triangle_rotation_is_valid_upper_bound():
    a = (pt(0, 0), pt(2, 0), pt(0, 2))
    b = (pt(2, 0), pt(0, 2), pt(0, 0))
    plan = plan_makespan_k(a, b, _units(3))
    assert plan.value >= diameter(a, b)
    assert validate_schedule(plan.schedule) == []
    assert measure_makespan(plan.schedule) == plan.value
    assert plan.start == a and plan.end == b


def test_too_many_robots_rejected():
    a = tuple(pt(3 * i, 0) for i in range(5))
    with pytest.raises(ResourceBound):
        plan_makespan_k(a, a, _units(5))


def test_state_planners_agree_with_planner2():
    sa = State2(Trapezoid.axis_aligned(0, 0, 0, 1, 1), Trapezoid.axis_aligned(1, 3, 0, 4, 1))
    sb = State2(Trapezoid.axis_aligned(2, 5, 0, 6, 1), Trapezoid.axis_aligned(3, 8, 0, 9, 1))
    got = plan_state_makespan_k(sa, sb, _units(2))
    want = plan_state_makespan(sa, sb, _units(2))
    assert got.value == want.value == 4
    got = plan_state_sum_k(sa, sb, _units(2))
    want = plan_state_sum(sa, sb, _units(2))
    assert got.value == want.value == 8


@st.composite
def config_pairs(draw):
    coords = st.integers(-3, 3).map(Fraction)

    def config():
        return (pt(draw(coords), draw(coords)), pt(draw(coords), draw(coords)))

    return config(), config()


@given(config_pairs())
@settings(max_examples=40, deadline=None)
def test_k2_formulations_agree(pair):
    a, b = pair
    if not (is_feasible(a, _units(2)) and is_feasible(b, _units(2))):
        return
    mk = plan_makespan_k(a, b, _units(2))
    m2 = plan_makespan2(a, b, _units(2))
    assert mk.value == m2.value
    assert mk.exact
    assert validate_schedule(mk.schedule) == []
    assert measure_makespan(mk.schedule) == mk.value

    sk = plan_sum_k(a, b, _units(2))
    s2 = plan_sum2(a, b, _units(2))
    assert sk.value == s2.value
    assert sk.exact
    assert measure_sum(sk.schedule) == sk.value


@st.composite
def triple_pairs(draw):
    coords = st.integers(0, 4).map(Fraction)

    def config():
        return tuple(pt(draw(coords), draw(coords)) for _ in range(3))

    return config(), config()


@given(triple_pairs())
@settings(max_examples=15, deadline=None)
def test_k3_plans_are_valid_upper_bounds(pair):
    a, b = pair
    if not (is_feasible(a, _units(3)) and is_feasible(b, _units(3))):
        return
    plan = plan_makespan_k(a, b, _units(3))
    assert plan.value >= diameter(a, b)
    assert validate_schedule(plan.schedule) == []
    assert plan.start == a and plan.end == b
    # pairwise relaxations never beat the fleet plan
    for i in range(3):
        for j in range(i + 1, 3):
            sub = plan_makespan2((a[i], a[j]), (b[i], b[j]), _units(2))
            assert plan.value >= sub.value
