"""Numerical verification of integral inequalities for generalized convex functions."""

__version__ = "0.1.0"
