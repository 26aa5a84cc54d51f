"""Exact tools for monogenic trinomials x^n + A x^m + B."""

__version__ = "0.1.0"
