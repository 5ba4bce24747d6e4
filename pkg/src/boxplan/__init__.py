"""Exact planners for coordinated motion of axis-aligned box robots under L1.

Everything computes over exact rationals; floats never enter a decision.
"""

__version__ = "0.1.0"
