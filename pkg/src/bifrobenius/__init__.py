"""Exact verification toolkit for biFrobenius algebras given by structure constants."""

__version__ = "0.1.0"
