"""Exact 2D geometry kernel: points, polygons, erosion, decomposition."""

from .base import (
    Point,
    pt,
    rat,
    l1_dist,
    linf_dist,
    orient,
    on_segment,
    segments_intersect,
    segment_intersection_points,
    min_gap_on_segment,
    convex_hull,
    area2,
    point_in_ring,
)
from .polygon import PolygonalDomain
from .boolean import inner_minkowski
from .decompose import Trapezoid, TrapezoidalDecomposition

__all__ = [
    "Point",
    "pt",
    "rat",
    "l1_dist",
    "linf_dist",
    "orient",
    "on_segment",
    "segments_intersect",
    "segment_intersection_points",
    "min_gap_on_segment",
    "convex_hull",
    "area2",
    "point_in_ring",
    "PolygonalDomain",
    "inner_minkowski",
    "Trapezoid",
    "TrapezoidalDecomposition",
]
