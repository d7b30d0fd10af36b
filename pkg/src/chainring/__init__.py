"""Finite chain rings as quotients of Z/p^r[X, Y]."""

__version__ = "0.1.0"
