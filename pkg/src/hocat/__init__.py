"""Homological algebra over computable exact categories."""

__version__ = "0.1.0"
