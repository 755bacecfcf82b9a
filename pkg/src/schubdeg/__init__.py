"""Exact computation of Schubert degree polynomials and related objects."""

__version__ = "0.1.0"
