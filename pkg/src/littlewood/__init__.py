"""Unimodular roots of reciprocal Littlewood polynomials: exact counting,
exhaustive search, coefficient structure and the supporting analysis."""

__version__ = "0.1.0"
