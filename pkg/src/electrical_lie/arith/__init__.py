"""Exact coefficient arithmetic: rationals, polynomials, fraction-free linear algebra."""

from .poly import (
    MissingParameter,
    ParameterMismatch,
    Poly,
    PolyRing,
    as_fraction,
    coeff_is_zero,
    poly_arith,
    poly_eval,
)
from .linalg import (
    EchelonSpan,
    NonGenericSpecialization,
    ff_echelon,
    ff_kernel,
    ff_rank,
    generic_rank,
    rank_rational,
)

__all__ = [
    "EchelonSpan",
    "MissingParameter",
    "NonGenericSpecialization",
    "ParameterMismatch",
    "Poly",
    "PolyRing",
    "as_fraction",
    "coeff_is_zero",
    "ff_echelon",
    "ff_kernel",
    "ff_rank",
    "generic_rank",
    "poly_arith",
    "poly_eval",
    "rank_rational",
]
