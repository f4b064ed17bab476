"""Exact constructions of point packings in the unit cube of dimension 2^k."""

__version__ = "0.1.0"
