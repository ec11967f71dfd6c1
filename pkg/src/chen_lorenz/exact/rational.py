"""Exact rational numbers.

``fractions.Fraction`` already keeps numerator and denominator reduced with a
positive denominator, so it is used directly as the rational type.  This module
only adds parsing and the ``"num/den"`` serialization used across the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

__all__ = ["Rational", "RationalLike", "parse_rational", "to_rational", "format_rational"]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer or a decimal literal exactly.

    Decimals are converted without rounding, so ``"2.5"`` gives ``5/2``.
    Raises ``ValueError`` on anything else (including ``"1/0"``).
    """
    if not isinstance(text, str):
        raise TypeError(f"expected a string, got {type(text).__name__}")
    s = text.strip()
    if not s:
        raise ValueError("empty rational literal")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def to_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(x: Fraction) -> str:
    """``"n"`` for integers, ``"n/d"`` otherwise."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
