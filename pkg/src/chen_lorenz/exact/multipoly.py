"""Sparse polynomials in the three Chen parameters ``a', b', c'``.

Terms are stored as ``{(i, j, k): coeff}`` for ``a'^i b'^j c'^k``.  Zero
coefficients are never stored.  The canonical term order used for display and
serialization is graded lexicographic, highest term first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .rational import format_rational, parse_rational, to_rational

Exponent = Tuple[int, int, int]

VARIABLES = ("a", "b", "c")

__all__ = ["MultiPoly", "Exponent", "mpoly_divide_exact", "NotDivisible"]


class NotDivisible(ArithmeticError):
    """Raised by ``/`` when the divisor does not divide exactly."""


def _grlex_key(e: Exponent):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean: Dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            c = to_rational(c)
            if c != 0:
                if len(e) != 3 or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent tuple {e!r}")
                clean[tuple(e)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        e = [0, 0, 0]
        e[VARIABLES.index(name)] = 1
        return cls({tuple(e): 1})

    @classmethod
    def generators(cls) -> Tuple["MultiPoly", "MultiPoly", "MultiPoly"]:
        return cls.var("a"), cls.var("b"), cls.var("c")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in canonical (graded lex, descending) order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> Tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    # arithmetic

    @staticmethod
    def _coerce(other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(other)

    def __eq__(self, other):
        if isinstance(other, (MultiPoly, int, Fraction)):
            return self.terms == self._coerce(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        q = mpoly_divide_exact(self, self._coerce(other))
        if q is None:
            raise NotDivisible("exact quotient does not exist")
        return q

    def evaluate(self, a, b, c):
        total = Fraction(0)
        for (i, j, k), coeff in self.terms.items():
            total += coeff * a**i * b**j * c**k
        return total

    __call__ = evaluate

    def substitute(self, a=None, b=None, c=None) -> "MultiPoly":
        """Replace variables by rationals or other MultiPolys."""
        vals = [a, b, c]
        gens = MultiPoly.generators()
        repl = [gens[i] if v is None else MultiPoly._coerce(v) for i, v in enumerate(vals)]
        out = MultiPoly()
        for (i, j, k), coeff in self.terms.items():
            out = out + repl[0] ** i * repl[1] ** j * repl[2] ** k * coeff
        return out

    # serialization / display

    def to_json(self):
        return [
            {"exponents": list(e), "coeff": format_rational(c)}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, items: Iterable[Mapping]) -> "MultiPoly":
        return cls({tuple(it["exponents"]): parse_rational(it["coeff"]) for it in items})

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for n, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if p == 1 else f"{v}^{p}" for v, p in zip(VARIABLES, e) if p
            )
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            if n == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)


def mpoly_divide_exact(f: MultiPoly, g: MultiPoly) -> Optional[MultiPoly]:
    """Return ``q`` with ``f == g*q`` or ``None`` when no exact quotient exists.

    Uses leading-term division in graded lex order; with a single divisor the
    remainder is zero iff ``g`` divides ``f``, so the first leading term of the
    running remainder that ``LT(g)`` fails to divide proves non-divisibility.
    """
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    ge, gc = g.leading_term()
    rem = dict(f.terms)
    quot: Dict[Exponent, Fraction] = {}
    while rem:
        re = max(rem, key=_grlex_key)
        rc = rem[re]
        if any(x < y for x, y in zip(re, ge)):
            return None
        qe = (re[0] - ge[0], re[1] - ge[1], re[2] - ge[2])
        qc = rc / gc
        quot[qe] = qc
        for e, c in g.terms.items():
            t = (e[0] + qe[0], e[1] + qe[1], e[2] + qe[2])
            v = rem.get(t, 0) - qc * c
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return MultiPoly(quot)
