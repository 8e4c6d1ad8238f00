"""Exact scalars, sparse polynomials and the matrix operations built on them."""
from .fields import GF, QQ, DomainError, ExtensionField, Field, PrimeField, Rationals, Scalar
from .ops import (
    determinant,
    hessian,
    linear_pullback,
    partial_derivative,
    poly_arith,
    substitute_linear,
    sylvester_matrix,
    sylvester_resultant,
)
from .poly import MINUS_INFINITY, AlphabetError, Poly

__all__ = [
    "GF",
    "QQ",
    "AlphabetError",
    "DomainError",
    "ExtensionField",
    "Field",
    "MINUS_INFINITY",
    "Poly",
    "PrimeField",
    "Rationals",
    "Scalar",
    "determinant",
    "hessian",
    "linear_pullback",
    "partial_derivative",
    "poly_arith",
    "substitute_linear",
    "sylvester_matrix",
    "sylvester_resultant",
]
