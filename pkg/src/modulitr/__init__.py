"""Exact-arithmetic intersection theory, localization sums, and
topological recursion on a pair of spectral curves, together with a
verification harness exposed as a CLI and an HTTP service."""

__version__ = "0.1.0"
