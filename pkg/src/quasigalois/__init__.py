"""Quasi-Galois points of plane curves, in exact arithmetic."""

__version__ = "0.1.0"
