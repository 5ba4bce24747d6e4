"""SVG rendering sanity: structure, decimals, and the exposure bar."""

from fractions import Fraction as F

from boxplan.geom.base import pt
from boxplan.geom.polygon import PolygonalDomain
from boxplan.model import UNIT, Schedule, Trajectory
from boxplan.render import render_schedule_svg

STRIP = PolygonalDomain.box(0, 0, 10, F(3, 2))


def crossing_schedule():
    a = Trajectory.from_points([(0, pt(1, F(3, 4))), (8, pt(9, F(3, 4)))])
    b = Trajectory.from_points([(0, pt(9, F(7, 4))), (8, pt(1, F(7, 4)))])
    return Schedule((UNIT, UNIT), (a, b))


def test_svg_structure():
    svg = render_schedule_svg(crossing_schedule(), [STRIP])
    assert svg.startswith("<svg ") and svg.rstrip().endswith("</svg>")
    assert svg.count("<polyline") == 2
    # start markers dashed, targets solid
    assert svg.count("stroke-dasharray") == 2
    assert "<rect" in svg


def test_svg_has_no_rationals_or_exponents():
    svg = render_schedule_svg(crossing_schedule(), [STRIP])
    body = svg.replace("stroke-dasharray", "")
    assert "/" not in body.replace("</", "")
    assert "e-" not in body and "E" not in body


def test_timeline_shows_exposure_split():
    # robot 1 rides the covered strip, robot 2 is never covered, so the
    # timeline must show both colors
    svg = render_schedule_svg(crossing_schedule(), [STRIP])
    assert '#3a8f4d' in svg  # covered baseline
    assert '#d0443e' in svg  # exposed segments


def test_fully_covered_schedule_has_no_red():
    inside = Trajectory.from_points([(0, pt(1, F(3, 4))), (8, pt(9, F(3, 4)))])
    svg = render_schedule_svg(Schedule((UNIT,), (inside,)), [STRIP])
    assert '#d0443e' not in svg


def test_domain_outline_rendered():
    svg = render_schedule_svg(crossing_schedule(), domain=PolygonalDomain.box(-1, -1, 11, 4))
    assert '#eeeeee' in svg
