"""Exact decision procedures for lens spaces, Farey paths and surgery homology."""

from lensbound.errors import InputError, InvariantError
from lensbound.rational import (
    ConnectedSum,
    LensSpace,
    Slope,
    cf_eval,
    lens_normalize,
    lens_oriented_homeo,
    lens_reverse,
    neg_cf,
)

__all__ = [
    "ConnectedSum",
    "InputError",
    "InvariantError",
    "LensSpace",
    "Slope",
    "cf_eval",
    "lens_normalize",
    "lens_oriented_homeo",
    "lens_reverse",
    "neg_cf",
]

__version__ = "0.1.0"
