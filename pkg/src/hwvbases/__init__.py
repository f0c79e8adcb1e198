"""Exact constructions of highest-weight-vector bases on tuples of matrices."""

__version__ = "0.1.0"
