"""Exact and approximate expected density of random minimizer schemes."""

from fractions import Fraction

from .core import (
    CapExceeded,
    ParamError,
    Params,
    count_distinct_kmers,
    gamechanger_probability,
    is_gamechanger,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "Fraction",
    "ParamError",
    "Params",
    "count_distinct_kmers",
    "gamechanger_probability",
    "is_gamechanger",
]
