"""Sylvester matrices and resultants.

Two independent routes are provided: the Sylvester determinant
(:func:`resultant`) and the subresultant pseudo-remainder sequence
(:func:`resultant_prs`).  They must agree exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .matrix import SquareMatrix, determinant
from .unipoly import UniPoly

__all__ = ["sylvester_matrix", "sylvester_from_coeffs", "resultant", "resultant_prs"]


def sylvester_from_coeffs(p_high: Sequence, q_high: Sequence) -> SquareMatrix:
    """Sylvester matrix from coefficient lists given highest degree first.

    Layout: ``deg q`` staggered rows of ``p`` followed by ``deg p`` staggered
    rows of ``q``.  The leading coefficients are taken as given, so a formally
    degree-2 ``q`` with a vanishing leading entry still yields a 5x5 matrix.
    """
    m = len(p_high) - 1
    n = len(q_high) - 1
    if m < 1 or n < 1:
        raise ValueError("Sylvester matrix needs degrees >= 1")
    size = m + n
    zero = 0 * p_high[0]
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(p_high) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(q_high) + [zero] * (size - n - 1 - i))
    return SquareMatrix(rows)


def _check(p: UniPoly, q: UniPoly):
    if p.is_zero or q.is_zero:
        raise ValueError("resultant of the zero polynomial is not defined here")
    if p.degree < 1 or q.degree < 1:
        raise ValueError("polynomials must have degree >= 1")


def sylvester_matrix(p: UniPoly, q: UniPoly) -> SquareMatrix:
    _check(p, q)
    return sylvester_from_coeffs(p.coeffs[::-1], q.coeffs[::-1])


def resultant(p: UniPoly, q: UniPoly) -> Fraction:
    """Res(p, q) as the determinant of :func:`sylvester_matrix`."""
    return determinant(sylvester_matrix(p, q))


def resultant_prs(p: UniPoly, q: UniPoly) -> Fraction:
    """Res(p, q) via the subresultant pseudo-remainder sequence.

    Follows the classical Collins/Brown recurrence (Cohen, GTM 138, Alg. 3.3.7)
    without content removal.
    """
    _check(p, q)
    a, b = p, q
    s = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            s = -1
    g = Fraction(1)
    h = Fraction(1)
    while b.degree > 0:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            s = -s
        r = a.pseudo_rem(b)
        a = b
        b = r * (1 / (g * h**delta))
        if b.is_zero:
            return Fraction(0)
        g = a.lc
        h = h ** (1 - delta) * g**delta
    h = h ** (1 - a.degree) * b.lc ** a.degree
    return s * h
