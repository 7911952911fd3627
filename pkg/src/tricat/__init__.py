"""Executable triangulated categories over exact fields."""

__version__ = "0.1.0"
