"""Narayana numbers that are concatenations of two repdigits: search, bounds, reduction, certificate."""

__version__ = "0.1.0"
