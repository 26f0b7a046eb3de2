"""Exact jet calculus for focus-focus labels and their affine invariants."""

__version__ = "0.1.0"
