"""Decompositions of modules by pairwise comaximal families of ideals."""

__version__ = "0.1.0"
