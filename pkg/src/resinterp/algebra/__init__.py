"""Scalars, monomials and polynomials over Q(i)."""

from .scalar import GaussianRational, I, ONE, ZERO, as_scalar, format_scalar
from .order import GREVLEX, LEX, MonomialOrder
from .poly import (
    MultiPoly,
    embed,
    evaluate,
    exact_div,
    jet_polynomial,
    poly_canonical,
    poly_diff,
    poly_mul,
    series_inverse_truncated,
    taylor_shift,
    truncate,
    univ_divmod,
)
from .linalg import det_bareiss, det_cofactor


def poly_det(matrix, nvars, order=GREVLEX):
    """Exact determinant of a square matrix of polynomials.

    Laplace expansion up to 4x4, fraction-free Bareiss elimination above.
    """
    zero = MultiPoly.zero(nvars)
    if len(matrix) <= 4:
        return det_cofactor(matrix, zero)
    return det_bareiss(matrix, lambda a, b: exact_div(a, b, order), zero)


__all__ = [
    "GaussianRational", "I", "ONE", "ZERO", "as_scalar", "format_scalar",
    "GREVLEX", "LEX", "MonomialOrder", "MultiPoly", "embed", "evaluate",
    "exact_div", "jet_polynomial", "poly_canonical", "poly_diff", "poly_mul",
    "series_inverse_truncated", "taylor_shift", "truncate", "univ_divmod",
    "poly_det", "det_bareiss", "det_cofactor",
]
