"""Square matrices with exact entries and their determinants."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Sequence

from .multipoly import MultiPoly
from .rational import format_rational, to_rational
from .surd import Surd

__all__ = ["SquareMatrix", "determinant", "determinant_cofactor"]


def _normalize(x):
    if isinstance(x, (MultiPoly, Surd)):
        return x
    return to_rational(x)


class SquareMatrix:
    """Immutable ``n x n`` grid of ``Fraction`` or ``MultiPoly`` entries.

    ``Surd`` entries are also accepted (Jacobians at wing equilibria); their
    determinant is taken by cofactor expansion.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        grid = tuple(tuple(_normalize(x) for x in row) for row in rows)
        n = len(grid)
        if n == 0:
            raise ValueError("matrix must have positive order")
        if any(len(r) != n for r in grid):
            raise ValueError("matrix is not square")
        kinds = {type(x) for r in grid for x in r}
        if MultiPoly in kinds and len(kinds) > 1:
            # promote rationals so the entry kind is homogeneous
            grid = tuple(
                tuple(x if isinstance(x, MultiPoly) else MultiPoly.const(x) for x in r)
                for r in grid
            )
        object.__setattr__(self, "rows", grid)

    def __setattr__(self, name, value):
        raise AttributeError("SquareMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "SquareMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def order(self) -> int:
        return len(self.rows)

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.rows[0][0], MultiPoly)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def map(self, fn: Callable) -> "SquareMatrix":
        return SquareMatrix([[fn(x) for x in r] for r in self.rows])

    def evaluate(self, a, b, c) -> "SquareMatrix":
        """Instantiate a symbolic matrix at a rational point."""
        return self.map(lambda x: x.evaluate(a, b, c) if isinstance(x, MultiPoly) else x)

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.order)), Fraction(0))

    def tolist(self) -> List[List]:
        return [list(r) for r in self.rows]

    def to_json(self):
        def enc(x):
            if isinstance(x, MultiPoly):
                return x.to_json()
            if isinstance(x, Surd):
                return str(x)
            return format_rational(x)

        return [[enc(x) for x in r] for r in self.rows]

    def __repr__(self):
        return "SquareMatrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"


def determinant(m: SquareMatrix):
    """Fraction-free (Bareiss) elimination.

    Every division in the Bareiss recurrence is exact in the entry ring, so the
    same code serves rational and polynomial matrices.
    """
    if any(isinstance(x, Surd) for r in m.rows for x in r):
        return determinant_cofactor(m)
    a = [list(r) for r in m.rows]
    n = m.order
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if not a[k][k]:
            pivot = next((i for i in range(k + 1, n) if a[i][k]), None)
            if pivot is None:
                return MultiPoly() if m.is_symbolic else Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * akk - aik * a[k][j]) / prev
            a[i][k] = 0 * akk
        prev = akk
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def determinant_cofactor(m: SquareMatrix):
    """Laplace expansion along the first row; exponential, small orders only."""
    rows = m.tolist()

    def rec(mat):
        if len(mat) == 1:
            return mat[0][0]
        total = None
        for j, x in enumerate(mat[0]):
            if not x:
                continue
            minor = [r[:j] + r[j + 1:] for r in mat[1:]]
            term = x * rec(minor)
            if j % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            return 0 * mat[0][0]
        return total

    return rec(rows)
