"""Exact computation of admissible skein modules, trace spaces and coends."""

__version__ = "0.1.0"
