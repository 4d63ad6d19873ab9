"""Seat-indexed classroom behavior analytics from detection streams."""

__version__ = "0.1.0"
