"""Relative and inverse Turán numbers of small graphs."""

__version__ = "0.1.0"
