"""licci: exact linkage and free-resolution calculator for grade-3 perfect ideals."""

from .fields import F32003, QQ, PrimeField, RationalField, field_from_name
from .groebner import (
    HilbertData,
    Ideal,
    colon,
    hilbert,
    ideal,
    ideal_equal,
    intersect,
    is_artinian,
    quotient_by_element,
    standard_monomials,
)
from .orders import DEGLEX, DEGREVLEX, Elimination
from .poly import Monomial, ParseError, Polynomial, Ring, parse, qq_ring

__version__ = "0.1.0"

__all__ = [
    "F32003",
    "QQ",
    "PrimeField",
    "RationalField",
    "field_from_name",
    "HilbertData",
    "Ideal",
    "colon",
    "hilbert",
    "ideal",
    "ideal_equal",
    "intersect",
    "is_artinian",
    "quotient_by_element",
    "standard_monomials",
    "DEGLEX",
    "DEGREVLEX",
    "Elimination",
    "Monomial",
    "ParseError",
    "Polynomial",
    "Ring",
    "parse",
    "qq_ring",
    "__version__",
]
