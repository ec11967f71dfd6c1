"""Real-root isolation with Sturm sequences and exact bisection."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional

from .unipoly import UniPoly, poly_eval

__all__ = ["RealRoot", "sturm_sequence", "sturm_count", "real_roots", "DEFAULT_WIDTH"]

DEFAULT_WIDTH = Fraction(1, 10**12)


@dataclass(frozen=True)
class RealRoot:
    """A real root isolated in ``(lo, hi]``.

    ``exact`` is set when the root is rational; then ``lo == hi == exact``.
    """

    lo: Fraction
    hi: Fraction
    exact: Optional[Fraction] = None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self):
        return float(self.midpoint)


def sturm_sequence(p: UniPoly) -> List[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero and seq[-1].degree > 0:
        seq.append(-(seq[-2] % seq[-1]))
    if seq[-1].is_zero:
        seq.pop()
    return seq


def _sign_changes(seq: List[UniPoly], x: Fraction) -> int:
    changes = 0
    last = 0
    for q in seq:
        v = poly_eval(q, x)
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if last and s != last:
            changes += 1
        last = s
    return changes


def _sign_changes_at_inf(seq: List[UniPoly], negative: bool) -> int:
    changes = 0
    last = 0
    for q in seq:
        s = 1 if q.lc > 0 else -1
        if negative and q.degree % 2:
            s = -s
        if last and s != last:
            changes += 1
        last = s
    return changes


def sturm_count(p: UniPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``; ``None`` means infinite."""
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p)
    vlo = _sign_changes_at_inf(seq, True) if lo is None else _sign_changes(seq, Fraction(lo))
    vhi = _sign_changes_at_inf(seq, False) if hi is None else _sign_changes(seq, Fraction(hi))
    return vlo - vhi


def _cauchy_bound(p: UniPoly) -> Fraction:
    lc = abs(p.lc)
    return 1 + max(abs(c) / lc for c in p.coeffs[:-1])


def _integer_lc(p: UniPoly) -> int:
    """Leading coefficient of ``p`` after clearing denominators."""
    den = lcm(*(c.denominator for c in p.coeffs))
    return abs(int(p.lc * den))


def real_roots(p: UniPoly, width: Fraction = DEFAULT_WIDTH) -> List[RealRoot]:
    """Isolate every distinct real root of ``p``, sorted ascending.

    Works on the squarefree part.  Rational roots are detected exactly: any
    rational root ``r/s`` of the integer-scaled polynomial has ``s`` dividing
    its leading coefficient ``L``, and two such rationals differ by at least
    ``1/L**2``, so once an interval is narrower than ``1/(2 L**2)`` the closest
    fraction with denominator ``<= L`` is the only rational candidate.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no isolated roots")
    if p.degree < 1:
        return []
    sqf = p.squarefree_part()
    seq = sturm_sequence(sqf)
    lead = _integer_lc(sqf)
    rational_width = Fraction(1, 2 * lead * lead)
    bound = _cauchy_bound(sqf)

    def changes(x):
        return _sign_changes(seq, x)

    out: List[RealRoot] = []
    stack = [(-bound, bound, changes(-bound), changes(bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append(_refine(sqf, lo, hi, width, rational_width, lead))
            continue
        mid = (lo + hi) / 2
        vmid = changes(mid)
        if poly_eval(sqf, mid) == 0:
            out.append(RealRoot(mid, mid, mid))
            # shrink the left half until mid is its only root on the right edge
            cut = (lo + mid) / 2
            vcut = changes(cut)
            while vcut - vmid != 1:
                cut = (cut + mid) / 2
                vcut = changes(cut)
            stack.append((lo, cut, vlo, vcut))
            stack.append((mid, hi, vmid, vhi))
        else:
            stack.append((lo, mid, vlo, vmid))
            stack.append((mid, hi, vmid, vhi))
    out.sort(key=lambda r: r.midpoint)
    return out


def _refine(p: UniPoly, lo: Fraction, hi: Fraction, width: Fraction,
            rational_width: Fraction, lead: int) -> RealRoot:
    """Bisect a single-root interval ``(lo, hi]`` by sign."""
    if poly_eval(p, hi) == 0:
        return RealRoot(hi, hi, hi)
    flo = poly_eval(p, lo)
    if flo == 0:
        # lo is an already-reported simple root; p has the sign of p' just right of it
        flo = poly_eval(p.derivative(), lo)
    target = min(width, rational_width)
    while hi - lo > target:
        mid = (lo + hi) / 2
        fm = poly_eval(p, mid)
        if fm == 0:
            return RealRoot(mid, mid, mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    cand = ((lo + hi) / 2).limit_denominator(lead)
    if lo < cand <= hi and poly_eval(p, cand) == 0:
        return RealRoot(cand, cand, cand)
    if poly_eval(p, hi) == 0:
        return RealRoot(hi, hi, hi)
    return RealRoot(lo, hi)
