"""Self-contained SVG pictures of schedules.

The drawing shows the optional movement domain, the shaded cover
regions, each robot's trajectory with its box at start and end, and a
timeline bar underneath marking the intervals during which some robot
is exposed.  All geometry is converted to decimals here and nowhere
else; 12 significant digits keep the output readable and stable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .geom.base import Point, complement_intervals, merge_intervals
from .geom.polygon import PolygonalDomain
from .model import Schedule, covered_intervals

_COLORS = ("#d0443e", "#2d6fb4", "#3a8f4d", "#b07a1f", "#7a4fb0", "#3aa0a0")
_COVER_FILL = "#bcd8ef"
_DOMAIN_FILL = "#eeeeee"
_EXPOSED = "#d0443e"
_COVERED = "#3a8f4d"


def _num(x: Fraction | int | float) -> str:
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s


def _ring_path(ring: Sequence[Point], tx, ty) -> str:
    steps = [f"{'M' if i == 0 else 'L'}{_num(tx(p.x))},{_num(ty(p.y))}"
             for i, p in enumerate(ring)]
    return "".join(steps) + "Z"


def _polygon_path(dom: PolygonalDomain, tx, ty) -> str:
    return "".join(_ring_path(ring, tx, ty) for ring in dom.all_rings())


def _exposed_intervals(
    schedule: Schedule, cover: Sequence[PolygonalDomain]
) -> list[tuple[Fraction, Fraction]]:
    window = (schedule.t0, schedule.t1)
    out: list[tuple[Fraction, Fraction]] = []
    for tr, shape in zip(schedule.trajectories, schedule.shapes):
        out.extend(complement_intervals(window, covered_intervals(tr, shape, cover)))
    return merge_intervals(out)


def render_schedule_svg(
    schedule: Schedule,
    cover: Sequence[PolygonalDomain] = (),
    domain: PolygonalDomain | None = None,
    scale: int = 48,
) -> str:
    """One SVG document for a schedule, as a string."""
    xs: list[Fraction] = []
    ys: list[Fraction] = []
    doms = list(cover) + ([domain] if domain is not None else [])
    for dom in doms:
        x0, y0, x1, y1 = dom.bbox()
        xs += [x0, x1]
        ys += [y0, y1]
    for tr, shape in zip(schedule.trajectories, schedule.shapes):
        for _, p in tr.breakpoints:
            xs += [p.x - shape.half_width, p.x + shape.half_width]
            ys += [p.y - shape.half_height, p.y + shape.half_height]
    pad = Fraction(1, 2)
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    width = float(x1 - x0) * scale
    height = float(y1 - y0) * scale
    bar_h = 14
    bar_gap = 10
    total_h = height + bar_gap + bar_h + 4

    def tx(x: Fraction) -> float:
        return float(x - x0) * scale

    def ty(y: Fraction) -> float:
        # svg y grows downward
        return float(y1 - y) * scale

    out: list[str] = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}"'
        f' height="{_num(total_h)}" viewBox="0 0 {_num(width)} {_num(total_h)}">'
    )
    out.append(f'<rect width="{_num(width)}" height="{_num(height)}" fill="#ffffff"/>')
    if domain is not None:
        out.append(
            f'<path d="{_polygon_path(domain, tx, ty)}" fill="{_DOMAIN_FILL}"'
            f' stroke="#777777" fill-rule="evenodd"/>'
        )
    for dom in cover:
        out.append(
            f'<path d="{_polygon_path(dom, tx, ty)}" fill="{_COVER_FILL}"'
            f' stroke="#5a8ab4" fill-rule="evenodd"/>'
        )
    for r, (tr, shape) in enumerate(zip(schedule.trajectories, schedule.shapes)):
        color = _COLORS[r % len(_COLORS)]
        pts = " ".join(f"{_num(tx(p.x))},{_num(ty(p.y))}" for _, p in tr.breakpoints)
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}"'
            f' stroke-width="2" stroke-linejoin="round"/>'
        )
        for p, dash in ((tr.start, ' stroke-dasharray="4 3"'), (tr.end, "")):
            out.append(
                f'<rect x="{_num(tx(p.x - shape.half_width))}"'
                f' y="{_num(ty(p.y + shape.half_height))}"'
                f' width="{_num(float(shape.width) * scale)}"'
                f' height="{_num(float(shape.height) * scale)}"'
                f' fill="{color}" fill-opacity="0.25" stroke="{color}"{dash}/>'
            )

    # timeline bar: exposed stretches on top of a covered baseline
    span = schedule.t1 - schedule.t0
    bar_y = height + bar_gap
    out.append(
        f'<rect x="0" y="{_num(bar_y)}" width="{_num(width)}"'
        f' height="{bar_h}" fill="{_COVERED}" fill-opacity="0.6"/>'
    )
    if span > 0:
        for a, b in _exposed_intervals(schedule, cover):
            bx = float((a - schedule.t0) / span) * width
            bw = float((b - a) / span) * width
            out.append(
                f'<rect x="{_num(bx)}" y="{_num(bar_y)}" width="{_num(bw)}"'
                f' height="{bar_h}" fill="{_EXPOSED}"/>'
            )
    out.append(
        f'<rect x="0" y="{_num(bar_y)}" width="{_num(width)}"'
        f' height="{bar_h}" fill="none" stroke="#333333"/>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
