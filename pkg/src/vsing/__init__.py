"""Exact calculator for the singlet vertex algebra M(p) and its Whittaker modules."""

from .state import (
    FockState,
    ParseError,
    WhittakerParams,
    deserialize,
    serialize,
    state_add,
    state_scale,
)

__all__ = [
    "FockState",
    "ParseError",
    "WhittakerParams",
    "deserialize",
    "serialize",
    "state_add",
    "state_scale",
]
__version__ = "0.1.0"
