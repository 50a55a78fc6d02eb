"""Exact CUE moments of secular coefficients and symmetric-power traces,
contingency-table counts, and their F_q[T] analogues."""

__version__ = "0.1.0"
