"""Exact combinatorics of itineraries of locally convex curves."""

__version__ = "0.1.0"
