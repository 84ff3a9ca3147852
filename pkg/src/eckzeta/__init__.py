"""Exact twisted Lefschetz zeta functions, ECK chain complexes and Alexander polynomials."""

__version__ = "0.1.0"
