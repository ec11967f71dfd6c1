"""Numbers ``r + s*sqrt(d)`` with rational ``r, s`` and a fixed rational radicand ``d``.

Enough arithmetic to evaluate the polynomial vector fields exactly at the wing
equilibria, whose coordinates are ``±sqrt(d)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, sqrt

from .rational import format_rational, to_rational

__all__ = ["Surd"]


@dataclass(frozen=True)
class Surd:
    rational: Fraction
    coeff: Fraction
    radicand: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rational", to_rational(self.rational))
        object.__setattr__(self, "coeff", to_rational(self.coeff))
        object.__setattr__(self, "radicand", to_rational(self.radicand))
        if self.radicand <= 0:
            raise ValueError("radicand must be positive")

    @classmethod
    def sqrt(cls, d, sign: int = 1) -> "Surd":
        return cls(Fraction(0), Fraction(sign), d)

    def _lift(self, other) -> "Surd":
        if isinstance(other, Surd):
            if other.radicand != self.radicand:
                raise ValueError("mixed radicands")
            return other
        return Surd(to_rational(other), Fraction(0), self.radicand)

    def __add__(self, other):
        o = self._lift(other)
        return Surd(self.rational + o.rational, self.coeff + o.coeff, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.rational, -self.coeff, self.radicand)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        d = self.radicand
        return Surd(
            self.rational * o.rational + self.coeff * o.coeff * d,
            self.rational * o.coeff + self.coeff * o.rational,
            d,
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        root = _sqrt_if_rational(self.radicand)
        if root is not None:
            # pair representation is not unique when sqrt(d) is rational
            return self.rational + self.coeff * root == 0
        return self.rational == 0 and self.coeff == 0

    def to_rational(self) -> Fraction:
        """The value as a ``Fraction``; ``ArithmeticError`` if it is irrational."""
        if self.coeff == 0:
            return self.rational
        root = _sqrt_if_rational(self.radicand)
        if root is None:
            raise ArithmeticError(f"{self} is irrational")
        return self.rational + self.coeff * root

    def __eq__(self, other):
        if isinstance(other, (Surd, int, Fraction)):
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.rational, self.coeff, self.radicand))

    def __float__(self):
        return float(self.rational) + float(self.coeff) * sqrt(self.radicand)

    def __str__(self):
        if self.coeff == 0:
            return format_rational(self.rational)
        root = f"sqrt({format_rational(self.radicand)})"
        s = root if self.coeff == 1 else f"-{root}" if self.coeff == -1 else f"{format_rational(self.coeff)}*{root}"
        if self.rational == 0:
            return s
        return f"{format_rational(self.rational)} + {s}"


def _sqrt_if_rational(d: Fraction):
    n, m = d.numerator, d.denominator
    rn, rm = isqrt(n), isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None
