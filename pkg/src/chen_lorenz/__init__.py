"""Exact decision of Chen/Lorenz smooth non-equivalence, with numerical corroboration."""

__version__ = "0.1.0"
