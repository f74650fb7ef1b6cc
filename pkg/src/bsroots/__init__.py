"""Exact toolkit for b-functions of ``g f^s`` and the root bounds read off
from log resolutions."""

__version__ = "0.1.0"

from .bfunction import BFunction, factor_rational_roots
from .errors import (
    BoundsExhausted,
    BSRootsError,
    HypothesisError,
    HypothesisViolated,
    MissingRootMinusOne,
    ParseError,
)
from .mpoly import MPoly, parse_poly
from .resolution import UNBOUNDED, DivisorRecord, ResolutionData, identity_resolution
from .weyl import DEFAULT_BOUNDS, Bounds, WeylOperator, solve_bfunction

__all__ = [
    "BFunction", "Bounds", "BoundsExhausted", "BSRootsError", "DEFAULT_BOUNDS",
    "DivisorRecord", "HypothesisError", "HypothesisViolated", "MissingRootMinusOne",
    "MPoly", "ParseError", "ResolutionData", "UNBOUNDED", "WeylOperator",
    "factor_rational_roots", "identity_resolution", "parse_poly", "solve_bfunction",
]
