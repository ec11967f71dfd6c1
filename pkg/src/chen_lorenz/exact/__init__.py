"""Exact arithmetic kernel: rationals, polynomials, determinants, resultants, roots."""

from .matrix import SquareMatrix, determinant, determinant_cofactor
from .multipoly import MultiPoly, NotDivisible, mpoly_divide_exact
from .rational import Rational, format_rational, parse_rational, to_rational
from .resultant import resultant, resultant_prs, sylvester_from_coeffs, sylvester_matrix
from .roots import RealRoot, real_roots, sturm_count, sturm_sequence
from .surd import Surd
from .unipoly import UniPoly, poly_eval, poly_gcd

__all__ = [
    "MultiPoly",
    "NotDivisible",
    "RealRoot",
    "Rational",
    "SquareMatrix",
    "Surd",
    "UniPoly",
    "determinant",
    "determinant_cofactor",
    "format_rational",
    "mpoly_divide_exact",
    "parse_rational",
    "poly_eval",
    "poly_gcd",
    "real_roots",
    "resultant",
    "resultant_prs",
    "sturm_count",
    "sturm_sequence",
    "sylvester_from_coeffs",
    "sylvester_matrix",
    "to_rational",
]
