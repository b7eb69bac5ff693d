"""Distances, stable invariants and lower bounds for finite directed
weighted networks."""

__version__ = "0.1.0"

from .core import Correspondence, Network, compose, distortion  # noqa: E402
from .errors import (  # noqa: E402
    CardinalityError,
    CoverageError,
    DimensionError,
    GuardError,
    NetdistError,
)

__all__ = [
    "Network",
    "Correspondence",
    "distortion",
    "compose",
    "NetdistError",
    "CoverageError",
    "DimensionError",
    "GuardError",
    "CardinalityError",
]
