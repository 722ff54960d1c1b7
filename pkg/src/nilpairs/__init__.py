"""Exact computations with nilpotent pairs in semisimple Lie algebras."""

__version__ = "0.1.0"
