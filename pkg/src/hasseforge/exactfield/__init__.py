"""Exact arithmetic: finite fields, Q, polynomials, rational functions, linear algebra."""

from .fields import GF, QQ, FieldElement, FiniteField, RationalNumbers, field_from_descriptor
from .linalg import Matrix, SparseEchelon, exact_rank, kernel_basis, row_reduce, solve
from .ops import field_op, lucas_binomial, subfield_membership
from .poly import FunctionField, Poly, RationalFunction, function_field, is_normalized, poly_gcd

__all__ = [
    "GF",
    "QQ",
    "FieldElement",
    "FiniteField",
    "FunctionField",
    "Matrix",
    "Poly",
    "RationalFunction",
    "RationalNumbers",
    "SparseEchelon",
    "exact_rank",
    "field_from_descriptor",
    "field_op",
    "function_field",
    "is_normalized",
    "kernel_basis",
    "lucas_binomial",
    "poly_gcd",
    "row_reduce",
    "solve",
    "subfield_membership",
]
