"""Exact computer algebra for Hilbert schemes of points."""
__version__ = "0.1.0"
