"""Lorenz and Chen vector fields, equilibria, Jacobians and characteristic polynomials.

Lorenz:  x' = a(y - x),  y' = c x - x z - y,        z' = x y - b z
Chen:    x' = a(y - x),  y' = (c - a) x - x z + c y, z' = x y - b z

Everything here is exact.  Wing equilibria have coordinates ``±sqrt(r)`` and are
represented with :class:`~chen_lorenz.exact.Surd` so that residuals and
Jacobian determinants come out exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from .exact import SquareMatrix, Surd, UniPoly, determinant, format_rational, to_rational

Scalar = Union[Fraction, Surd]
StateVec = Tuple[Scalar, Scalar, Scalar]

__all__ = [
    "SystemKind",
    "LorenzParams",
    "ChenParams",
    "StateVec",
    "Equilibrium",
    "EquilibriumSet",
    "CharPolyCubic",
    "MissingEquilibrium",
    "make_params",
    "lorenz_field",
    "chen_field",
    "vector_field",
    "existence_product",
    "equilibria",
    "jacobian",
    "jacobian_det_at_equilibrium",
    "charpoly_at",
    "charpoly_of_matrix",
    "wing_charpoly_closed_form",
]


class SystemKind(str, enum.Enum):
    LORENZ = "lorenz"
    CHEN = "chen"

    @property
    def labels(self) -> Tuple[str, str, str]:
        return ("P1", "P2", "P3") if self is SystemKind.LORENZ else ("Q1", "Q2", "Q3")


class MissingEquilibrium(ValueError):
    """The requested wing equilibrium does not exist for these parameters."""


@dataclass(frozen=True)
class _Params:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    def astuple(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def to_json(self) -> Dict[str, str]:
        return {k: format_rational(v) for k, v in zip("abc", self.astuple())}

    def floats(self) -> Tuple[float, float, float]:
        return (float(self.a), float(self.b), float(self.c))


@dataclass(frozen=True)
class LorenzParams(_Params):
    kind = SystemKind.LORENZ


@dataclass(frozen=True)
class ChenParams(_Params):
    """Chen parameters ``(a', b', c')``."""

    kind = SystemKind.CHEN


def make_params(kind, a, b, c) -> _Params:
    kind = SystemKind(kind)
    cls = LorenzParams if kind is SystemKind.LORENZ else ChenParams
    return cls(a, b, c)


def lorenz_field(p: LorenzParams, s: StateVec) -> StateVec:
    a, b, c = p.astuple()
    x, y, z = s
    return (a * (y - x), c * x - x * z - y, x * y - b * z)


def chen_field(p: ChenParams, s: StateVec) -> StateVec:
    a, b, c = p.astuple()
    x, y, z = s
    return (a * (y - x), (c - a) * x - x * z + c * y, x * y - b * z)


def vector_field(p: _Params, s: StateVec) -> StateVec:
    return lorenz_field(p, s) if p.kind is SystemKind.LORENZ else chen_field(p, s)


def existence_product(p: _Params) -> Fraction:
    """``b(c-1)`` for Lorenz, ``b(2c-a)`` for Chen: three equilibria iff positive."""
    a, b, c = p.astuple()
    if p.kind is SystemKind.LORENZ:
        return b * (c - 1)
    return b * (2 * c - a)


def _wing_height(p: _Params) -> Fraction:
    a, b, c = p.astuple()
    return c - 1 if p.kind is SystemKind.LORENZ else 2 * c - a


@dataclass(frozen=True)
class Equilibrium:
    label: str
    point: StateVec
    # sign of the x,y coordinates: 0 at the origin, -1 / +1 on the wings
    sign: int = 0

    def approx(self) -> Tuple[float, float, float]:
        return tuple(float(v) for v in self.point)

    def to_json(self) -> Dict:
        def enc(v):
            return str(v) if isinstance(v, Surd) else format_rational(v)

        return {
            "label": self.label,
            "x": enc(self.point[0]),
            "y": enc(self.point[1]),
            "z": enc(self.point[2]),
            "sign": self.sign,
            "approx": list(self.approx()),
        }


@dataclass(frozen=True)
class EquilibriumSet:
    kind: SystemKind
    params: _Params
    points: Tuple[Equilibrium, ...]
    radicand: Fraction
    degenerate_merge: bool = False

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def labels(self) -> List[str]:
        return [e.label for e in self.points]

    def __getitem__(self, label: str) -> Equilibrium:
        for e in self.points:
            if e.label == label:
                return e
        raise MissingEquilibrium(f"{label} does not exist for {self.kind.value} {self.params.to_json()}")

    def to_json(self) -> Dict:
        return {
            "system": self.kind.value,
            "params": self.params.to_json(),
            "count": self.count,
            "radicand": format_rational(self.radicand),
            "degenerate_merge": self.degenerate_merge,
            "points": [e.to_json() for e in self.points],
        }


def equilibria(p: _Params) -> EquilibriumSet:
    """Origin always; wing points ``(±sqrt(r), ±sqrt(r), h)`` when ``r > 0``.

    ``r == 0`` is reported as a single equilibrium with ``degenerate_merge``.
    """
    zero = Fraction(0)
    labels = p.kind.labels
    points = [Equilibrium(labels[0], (zero, zero, zero))]
    r = existence_product(p)
    if r > 0:
        h = _wing_height(p)
        for label, sign in ((labels[1], -1), (labels[2], 1)):
            root = Surd.sqrt(r, sign)
            points.append(Equilibrium(label, (root, root, h), sign))
    return EquilibriumSet(p.kind, p, tuple(points), r, degenerate_merge=(r == 0))


def jacobian(p: _Params, s: StateVec) -> SquareMatrix:
    a, b, c = p.astuple()
    x, y, z = s
    if p.kind is SystemKind.LORENZ:
        rows = [[-a, a, 0], [c - z, -1, -x], [y, x, -b]]
    else:
        rows = [[-a, a, 0], [c - a - z, c, -x], [y, x, -b]]
    return SquareMatrix(rows)


def jacobian_det_at_equilibrium(p: _Params, label: str) -> Fraction:
    """Closed forms: ``ab(c-1)`` / ``-2ab(c-1)`` (Lorenz), ``ab(2c-a)`` / ``-2ab(2c-a)`` (Chen)."""
    eqs = equilibria(p)
    eqs[label]  # raises MissingEquilibrium
    a, b, _ = p.astuple()
    base = a * existence_product(p)
    return base if label == p.kind.labels[0] else -2 * base


@dataclass(frozen=True)
class CharPolyCubic:
    """Monic ``λ^3 + c2 λ^2 + c1 λ + c0``."""

    c2: Fraction
    c1: Fraction
    c0: Fraction

    def __call__(self, lam):
        return ((lam + self.c2) * lam + self.c1) * lam + self.c0

    def as_unipoly(self, var: str = "λ") -> UniPoly:
        return UniPoly([self.c0, self.c1, self.c2, 1], var)

    def astuple(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.c2, self.c1, self.c0)

    def to_json(self) -> Dict[str, str]:
        return {"c2": format_rational(self.c2), "c1": format_rational(self.c1), "c0": format_rational(self.c0)}


def _as_rational(v) -> Fraction:
    return v.to_rational() if isinstance(v, Surd) else to_rational(v)


def charpoly_of_matrix(m: SquareMatrix) -> CharPolyCubic:
    """``det(λI - J)`` for a 3x3 matrix via trace, principal minors and determinant."""
    if m.order != 3:
        raise ValueError("expected a 3x3 matrix")
    j = m.rows
    tr = j[0][0] + j[1][1] + j[2][2]
    minors = (
        j[0][0] * j[1][1] - j[0][1] * j[1][0]
        + j[0][0] * j[2][2] - j[0][2] * j[2][0]
        + j[1][1] * j[2][2] - j[1][2] * j[2][1]
    )
    det = determinant(m)
    return CharPolyCubic(_as_rational(-tr), _as_rational(minors), _as_rational(-det))


def wing_charpoly_closed_form(p: _Params) -> CharPolyCubic:
    """Lorenz P2/P3: (a+b+1, ab+bc, 2ab(c-1)); Chen Q2/Q3: (a+b-c, bc, 2ab(2c-a))."""
    a, b, c = p.astuple()
    if p.kind is SystemKind.LORENZ:
        return CharPolyCubic(a + b + 1, a * b + b * c, 2 * a * b * (c - 1))
    return CharPolyCubic(a + b - c, b * c, 2 * a * b * (2 * c - a))


def charpoly_at(p: _Params, label: str) -> CharPolyCubic:
    a, b, c = p.astuple()
    eq = equilibria(p)[label]
    if eq.sign == 0:
        if p.kind is SystemKind.LORENZ:
            return CharPolyCubic(a + b + 1, a + a * b - a * c + b, -a * b * (c - 1))
        return CharPolyCubic(a + b - c, a * a + a * b - 2 * a * c - b * c, -a * b * (2 * c - a))
    return charpoly_of_matrix(jacobian(p, eq.point))
