"""Exact intersection numbers on moduli models, cone computations and a scenario language."""

__version__ = "0.1.0"
