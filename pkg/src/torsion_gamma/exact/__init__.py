"""Exact arithmetic: rationals, Z/l^n, small finite fields, dense matrices."""

from .matrix import (
    AffineSolution,
    Matrix,
    determinant,
    howell_basis,
    howell_form,
    mat_inverse,
    row_span,
    smith_form,
    smith_valuations,
    solve_affine,
)
from .rings import BigRational, FiniteField, ModRing, ff_make, is_prime

__all__ = [
    "AffineSolution",
    "BigRational",
    "FiniteField",
    "Matrix",
    "ModRing",
    "determinant",
    "ff_make",
    "howell_basis",
    "howell_form",
    "is_prime",
    "mat_inverse",
    "row_span",
    "smith_form",
    "smith_valuations",
    "solve_affine",
]
