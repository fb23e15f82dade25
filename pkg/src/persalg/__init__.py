"""Polynomial, determinantal and tableau tools for generic free complexes
and multiparameter persistence modules."""

__version__ = "0.1.0"
