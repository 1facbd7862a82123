"""Hilbert functions, postulation bounds and colon ideals for mixed splines."""

__version__ = "0.1.0"
