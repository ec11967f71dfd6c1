"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rational import format_rational, to_rational

__all__ = ["UniPoly", "poly_eval", "poly_gcd"]


class UniPoly:
    """Immutable polynomial with ``Fraction`` coefficients, lowest degree first.

    Trailing zeros are stripped on construction, so the zero polynomial has an
    empty coefficient tuple and ``degree == -1``.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "b"):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def from_roots(cls, roots: Sequence, lead=1, var: str = "b") -> "UniPoly":
        p = cls([lead], var)
        for r in roots:
            p = p * cls([-to_rational(r), 1], var)
        return p

    @classmethod
    def monomial(cls, degree: int, coeff=1, var: str = "b") -> "UniPoly":
        return cls([0] * degree + [coeff], var)

    # basic properties

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        return poly_eval(self, x)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # ring operations

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = UniPoly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([], self.var), self
        quot = [Fraction(0)] * (dq + 1)
        lc = other.lc
        for k in range(dq, -1, -1):
            t = rem[k + other.degree] / lc
            quot[k] = t
            if t:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= t * b
        return UniPoly(quot, self.var), UniPoly(rem[: other.degree], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # derived polynomials

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        lc = self.lc
        return UniPoly([c / lc for c in self.coeffs], self.var)

    def pseudo_rem(self, other: "UniPoly") -> "UniPoly":
        """``lc(other)**(deg self - deg other + 1) * self mod other``."""
        other = self._coerce(other)
        delta = self.degree - other.degree
        if delta < 0:
            return self
        return (self * other.lc ** (delta + 1)) % other

    def squarefree_part(self) -> "UniPoly":
        if self.degree <= 0:
            return self
        return (self // poly_gcd(self, self.derivative())).monic()

    # display

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_eval(p: UniPoly, x):
    """Horner evaluation; exact when ``x`` is exact."""
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero polynomial only if both inputs are zero)."""
    if p.is_zero and q.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p, q
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()
