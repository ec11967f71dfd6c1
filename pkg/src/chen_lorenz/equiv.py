"""Spectral matching between a Chen system and a hypothetical Lorenz system.

A smooth equivalence maps equilibria to equilibria and makes the Jacobians at
corresponding equilibria similar, so the characteristic polynomials must agree.
Matching the origin polynomials gives

    a + b + 1 = u,   a + ab - ac + b = v,   -ab(c - 1) = w

with ``u, v, w`` read off the Chen origin polynomial, and matching the
first-order coefficient at the wing points gives ``ab + bc = k = b'c'``.
Eliminating ``a`` and ``c`` leaves a cubic and a quadratic in the unknown
Lorenz ``b``; they need a common root for any Lorenz system to match, so a
nonzero resultant ``M0`` certifies non-equivalence.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import (
    MultiPoly,
    RealRoot,
    UniPoly,
    determinant,
    format_rational,
    mpoly_divide_exact,
    poly_gcd,
    real_roots,
    resultant,
    sylvester_from_coeffs,
)
from .exact.matrix import SquareMatrix
from .systems import ChenParams, LorenzParams, charpoly_at, existence_product

__all__ = [
    "Verdict",
    "InvariantTriple",
    "MatchingSystem",
    "Candidate",
    "Certificate",
    "FactorizationReport",
    "CERTIFICATE_POINT",
    "PRINTED_QUINTIC",
    "invariants_from_chen",
    "invariants_from_lorenz",
    "matching_coeffs",
    "matching_system",
    "obstruction_m0",
    "m0_with_flags",
    "m0_matrix",
    "symbolic_m0",
    "surface_factors",
    "quintic_factor",
    "verify_factorization",
    "recover_lorenz_candidates",
    "decide",
]

CERTIFICATE_POINT = ChenParams(45, 5, 28)


class Verdict(str, enum.Enum):
    NONEQUIVALENT_RESULTANT = "NonEquivalent-ResultantNonzero"
    NONEQUIVALENT_NO_CANDIDATE = "NonEquivalent-NoValidCandidate"
    CANDIDATES_FOUND = "CandidatesFound"
    OUT_OF_SCOPE = "OutOfScope"


# invariants and the matching pair


@dataclass(frozen=True)
class InvariantTriple:
    """Origin characteristic coefficients ``(u, v, w)`` plus the wing coefficient ``k``."""

    u: Fraction
    v: Fraction
    w: Fraction
    k: Fraction
    source: Optional[ChenParams] = None

    def __post_init__(self):
        if self.source is not None:
            expected = _chen_invariants(*self.source.astuple())
            if (self.u, self.v, self.w, self.k) != expected:
                raise ValueError("invariants do not match their source Chen parameters")

    def astuple(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.u, self.v, self.w, self.k)

    def to_json(self) -> Dict[str, str]:
        return {n: format_rational(x) for n, x in zip("uvwk", self.astuple())}


def _chen_invariants(a, b, c):
    u = a + b - c
    v = a * a + a * b - 2 * a * c - b * c
    w = -a * b * (2 * c - a)
    k = b * c
    return (u, v, w, k)


def invariants_from_chen(p: ChenParams) -> InvariantTriple:
    return InvariantTriple(*_chen_invariants(*p.astuple()), source=p)


def invariants_from_lorenz(p: LorenzParams) -> InvariantTriple:
    """Invariants a Chen system would need in order to match ``p`` (round-trip testing)."""
    a, b, c = p.astuple()
    return InvariantTriple(a + b + 1, a + a * b - a * c + b, -a * b * (c - 1), a * b + b * c)


def matching_coeffs(u, v, w, k):
    """Cubic and quadratic coefficients, highest degree first, in any ring.

    cubic:     b^3 - u b^2 + v b - w
    quadratic: (u-1) b^2 + (u + v - u^2 - k) b + (u-1) k
    """
    one = u - u + 1
    cubic = [one, -u, v, -w]
    quadratic = [u - 1, u + v - u * u - k, (u - 1) * k]
    return cubic, quadratic


@dataclass(frozen=True)
class MatchingSystem:
    cubic: UniPoly
    quadratic: UniPoly

    @property
    def degenerate(self) -> bool:
        return self.quadratic.degree < 2

    def common_factor(self) -> UniPoly:
        if self.quadratic.is_zero:
            return self.cubic.monic()
        return poly_gcd(self.cubic, self.quadratic)


def matching_system(t: InvariantTriple) -> MatchingSystem:
    cubic, quadratic = matching_coeffs(*t.astuple())
    return MatchingSystem(UniPoly(cubic[::-1]), UniPoly(quadratic[::-1]))


# the obstruction M0


def m0_with_flags(t: InvariantTriple) -> Tuple[Fraction, List[str]]:
    """Exact resultant of the matching pair and any degeneracy flags.

    When ``u == 1`` the quadratic loses its leading coefficient; the pair is
    trimmed to its true degree before the resultant is taken.  Because the
    cubic is monic this equals the full 5x5 determinant.
    """
    ms = matching_system(t)
    p, q = ms.cubic, ms.quadratic
    if q.degree == 2:
        return resultant(p, q), []
    flags = ["degenerate-degree"]
    if q.is_zero:
        flags.append("quadratic-vanishes")
        return Fraction(0), flags
    if q.degree == 0:
        return q.lc ** p.degree, flags
    return resultant(p, q), flags


def obstruction_m0(p: ChenParams) -> Fraction:
    return m0_with_flags(invariants_from_chen(p))[0]


@lru_cache(maxsize=1)
def m0_matrix() -> SquareMatrix:
    """The 5x5 Sylvester array of the matching pair with entries in Q[a', b', c']."""
    a, b, c = MultiPoly.generators()
    cubic, quadratic = matching_coeffs(*_chen_invariants(a, b, c))
    return sylvester_from_coeffs(cubic, quadratic)


@lru_cache(maxsize=1)
def symbolic_m0() -> MultiPoly:
    return determinant(m0_matrix())


def surface_factors() -> List[Tuple[str, MultiPoly, int]]:
    a, b, c = MultiPoly.generators()
    return [("b", b, 1), ("a - 2*c", a - 2 * c, 2), ("1 + c", c + 1, 1)]


# transcribed quintic factor, with the printed "-a^4" read as -a'^4
_PRINTED_QUINTIC_TERMS = {
    (3, 0, 0): 1, (4, 0, 0): -1, (5, 0, 0): 1, (2, 1, 0): 1, (3, 1, 0): -1,
    (1, 2, 0): 1, (2, 2, 0): -2, (1, 3, 0): -2, (2, 3, 0): 1, (1, 4, 0): 1,
    (2, 0, 1): -2, (3, 0, 1): 3, (4, 0, 1): -4, (1, 1, 1): -3, (2, 1, 1): 4,
    (3, 1, 1): -5, (0, 2, 1): -1, (1, 2, 1): 5, (2, 2, 1): -2, (0, 3, 1): 2,
    (1, 3, 1): -2, (0, 4, 1): -1, (2, 0, 2): -2, (3, 0, 2): 4, (1, 1, 2): -3,
    (2, 1, 2): 6, (0, 2, 2): -1, (1, 2, 2): 4, (0, 3, 2): 1,
}
PRINTED_QUINTIC = MultiPoly(_PRINTED_QUINTIC_TERMS)


@dataclass(frozen=True)
class PeeledFactor:
    name: str
    factor: MultiPoly
    expected_multiplicity: int
    multiplicity: int

    @property
    def divided_exactly(self) -> bool:
        return self.multiplicity >= self.expected_multiplicity

    def to_json(self):
        return {
            "factor": self.name,
            "terms": self.factor.to_json(),
            "expected_multiplicity": self.expected_multiplicity,
            "multiplicity": self.multiplicity,
            "divided_exactly": self.divided_exactly,
        }


@dataclass(frozen=True)
class FactorizationReport:
    symbolic_m0: MultiPoly
    peeled_factors: Tuple[PeeledFactor, ...]
    quotient: MultiPoly
    printed_quintic: MultiPoly
    printed_quintic_match: bool
    # (exponents, computed coefficient, printed coefficient) for differing terms
    discrepancies: Tuple[Tuple[Tuple[int, int, int], Fraction, Fraction], ...]
    surface_checks: Dict[str, int]
    at_certificate_point: Dict[str, Fraction]

    def reconstruct(self) -> MultiPoly:
        prod = self.quotient
        for pf in self.peeled_factors:
            prod = prod * pf.factor ** pf.multiplicity
        return prod

    def to_json(self):
        return {
            "symbolic_m0_terms": len(self.symbolic_m0.terms),
            "symbolic_m0_total_degree": self.symbolic_m0.total_degree,
            "peeled_factors": [pf.to_json() for pf in self.peeled_factors],
            "quotient": self.quotient.to_json(),
            "quotient_text": str(self.quotient),
            "printed_quintic_match": self.printed_quintic_match,
            "discrepancies": [
                {"exponents": list(e), "computed": format_rational(cc), "printed": format_rational(pc)}
                for e, cc, pc in self.discrepancies
            ],
            "surface_checks": self.surface_checks,
            "at_certificate_point": {k: format_rational(v) for k, v in self.at_certificate_point.items()},
        }


def _random_rational(rng: random.Random, span: int = 50, den: int = 12) -> Fraction:
    return Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))


def _surface_point(name: str, rng: random.Random) -> Tuple[Fraction, Fraction, Fraction]:
    a, b, c = (_random_rational(rng) for _ in range(3))
    if name == "b":
        b = Fraction(0)
    elif name == "a - 2*c":
        a = 2 * c
    else:
        c = Fraction(-1)
    return a, b, c


def verify_factorization(samples: int = 20, seed: int = 0) -> FactorizationReport:
    m0 = symbolic_m0()
    rng = random.Random(seed)
    checks = {}
    for name, _, _ in surface_factors():
        checks[name] = sum(
            1 for _ in range(samples) if m0.evaluate(*_surface_point(name, rng)) == 0
        )
    rest = m0
    peeled = []
    for name, f, expected in surface_factors():
        mult = 0
        while True:
            q = mpoly_divide_exact(rest, f)
            if q is None:
                break
            rest, mult = q, mult + 1
        peeled.append(PeeledFactor(name, f, expected, mult))
    diffs = []
    for e in sorted(set(rest.terms) | set(PRINTED_QUINTIC.terms), key=lambda e: (sum(e), e), reverse=True):
        cc = rest.terms.get(e, Fraction(0))
        pc = PRINTED_QUINTIC.terms.get(e, Fraction(0))
        if cc != pc:
            diffs.append((e, cc, pc))
    pt = CERTIFICATE_POINT.astuple()
    at_point = {
        "m0": m0.evaluate(*pt),
        "quotient": rest.evaluate(*pt),
        "printed_quintic": PRINTED_QUINTIC.evaluate(*pt),
    }
    return FactorizationReport(
        symbolic_m0=m0,
        peeled_factors=tuple(peeled),
        quotient=rest,
        printed_quintic=PRINTED_QUINTIC,
        printed_quintic_match=not diffs,
        discrepancies=tuple(diffs),
        surface_checks=checks,
        at_certificate_point=at_point,
    )


@lru_cache(maxsize=1)
def quintic_factor() -> MultiPoly:
    """``M0 / (b' (a'-2c')^2 (1+c'))``, computed by exact division."""
    rest = symbolic_m0()
    for _, f, mult in surface_factors():
        for _ in range(mult):
            rest = rest / f
    return rest


# candidate recovery


class _Interval:
    """Closed rational interval; just enough arithmetic for sign decisions."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        self.lo = Fraction(lo)
        self.hi = Fraction(lo if hi is None else hi)

    def __add__(self, o):
        o = o if isinstance(o, _Interval) else _Interval(o)
        return _Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return _Interval(-self.hi, -self.lo)

    def __sub__(self, o):
        o = o if isinstance(o, _Interval) else _Interval(o)
        return self + (-o)

    def __rsub__(self, o):
        return _Interval(o) - self

    def __mul__(self, o):
        o = o if isinstance(o, _Interval) else _Interval(o)
        ps = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi]
        return _Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def inverse(self):
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return _Interval(1 / self.hi, 1 / self.lo)

    def sign(self) -> Optional[int]:
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None


@dataclass(frozen=True)
class Candidate:
    """A Lorenz triple recovered from a common root of the matching pair.

    Exact candidates carry rational ``a, b, c``.  Irrational roots carry
    enclosing intervals ``(lo, hi)`` instead; ``valid is None`` means a check
    could not be settled at the available precision.
    """

    b_root: RealRoot
    a: Optional[Fraction]
    b: Optional[Fraction]
    c: Optional[Fraction]
    valid: Optional[bool]
    reasons: Tuple[str, ...]
    intervals: Optional[Dict[str, Tuple[Fraction, Fraction]]] = None

    @property
    def exact(self) -> bool:
        return self.b is not None

    def params(self) -> Optional[LorenzParams]:
        if self.exact and self.a is not None and self.c is not None:
            return LorenzParams(self.a, self.b, self.c)
        return None

    def approx(self) -> Dict[str, float]:
        if self.exact:
            return {k: (float(v) if v is not None else float("nan")) for k, v in zip("abc", (self.a, self.b, self.c))}
        return {k: float((lo + hi) / 2) for k, (lo, hi) in self.intervals.items()}

    def to_json(self):
        def enc(name, v):
            if v is not None:
                return format_rational(v)
            if self.intervals and name in self.intervals:
                lo, hi = self.intervals[name]
                return f"[{format_rational(lo)}, {format_rational(hi)}]"
            return None

        return {
            "a": enc("a", self.a),
            "b": enc("b", self.b),
            "c": enc("c", self.c),
            "valid": self.valid,
            "reasons": list(self.reasons),
            "exact": self.exact,
            "approx": self.approx(),
        }


def _target_charpolys(t: InvariantTriple):
    origin = (t.u, t.v, t.w)
    wing = (t.u, t.k, -2 * t.w)
    return origin, wing


def _exact_candidate(t: InvariantTriple, root: RealRoot) -> Candidate:
    b = root.exact
    a = t.u - 1 - b
    if a * b == 0:
        return Candidate(root, a, b, None, False, ("singular-recovery: a*b = 0",))
    c = 1 - t.w / (a * b)
    failures = []
    if a <= 0:
        failures.append("a <= 0")
    if b <= 0:
        failures.append("b <= 0")
    lp = LorenzParams(a, b, c)
    if existence_product(lp) <= 0:
        failures.append("b(c-1) <= 0: Lorenz system lacks three equilibria")
    else:
        origin, wing = _target_charpolys(t)
        if charpoly_at(lp, "P1").astuple() != origin:
            failures.append("origin characteristic polynomial mismatch")
        for label in ("P2", "P3"):
            if charpoly_at(lp, label).astuple() != wing:
                failures.append(f"{label} characteristic polynomial mismatch")
    if failures:
        return Candidate(root, a, b, c, False, tuple(failures))
    return Candidate(root, a, b, c, True, ("all characteristic polynomials match exactly",))


def _residuals_vanish(t: InvariantTriple, minimal: UniPoly) -> bool:
    """Check the non-trivial matching equations modulo the root's minimal polynomial.

    With ``a = u-1-b`` and ``c = 1 - w/(ab)`` the ``λ^2`` and ``λ^0``
    coefficients match identically; the remaining ones reduce to the cleared
    residuals ``a b^2 + b^2 + w - v b`` (origin) and ``a^2 b + a b - w - k a`` (wing).
    """
    bvar = UniPoly([0, 1])
    a = UniPoly([t.u - 1, -1])
    origin = a * bvar * bvar + bvar * bvar + t.w - bvar * t.v
    wing = a * a * bvar + a * bvar - t.w - a * t.k
    return (origin % minimal).is_zero and (wing % minimal).is_zero


def _interval_candidate(t: InvariantTriple, root: RealRoot, minimal: UniPoly,
                        max_bits: int = 400) -> Candidate:
    failures = []
    matched = _residuals_vanish(t, minimal)
    if not matched:
        failures.append("characteristic polynomial mismatch")
    lo, hi = root.lo, root.hi
    signs = None
    for _ in range(max_bits):
        bi = _Interval(lo, hi)
        ai = (t.u - 1) - bi
        try:
            ci = 1 - t.w * (ai * bi).inverse()
            signs = (ai.sign(), bi.sign(), (bi * (ci - 1)).sign())
        except ZeroDivisionError:
            signs = None
        if signs is not None and None not in signs:
            break
        mid = (lo + hi) / 2
        # keep the half with a sign change of the minimal polynomial
        if (minimal(lo) > 0) != (minimal(mid) > 0):
            hi = mid
        else:
            lo = mid
    intervals = {"b": (bi.lo, bi.hi), "a": (ai.lo, ai.hi)}
    if signs is None or None in signs:
        if failures:
            return Candidate(root, None, None, None, False, tuple(failures), intervals)
        return Candidate(root, None, None, None, None, ("undetermined-at-precision",), intervals)
    intervals["c"] = (ci.lo, ci.hi)
    if signs[0] <= 0:
        failures.append("a <= 0")
    if signs[1] <= 0:
        failures.append("b <= 0")
    if signs[2] <= 0:
        failures.append("b(c-1) <= 0: Lorenz system lacks three equilibria")
    if failures:
        return Candidate(root, None, None, None, False, tuple(failures), intervals)
    return Candidate(root, None, None, None, True,
                     ("characteristic polynomials match exactly modulo the minimal polynomial of b",),
                     intervals)


def _split_rational_roots(g: UniPoly, roots: Sequence[RealRoot]) -> UniPoly:
    """``g`` with its rational linear factors removed (irreducible if degree <= 3)."""
    rest = g.squarefree_part()
    for r in roots:
        if r.is_exact:
            rest = rest // UniPoly([-r.exact, 1])
    return rest


def recover_lorenz_candidates(t: InvariantTriple) -> List[Candidate]:
    """All Lorenz triples ``(a, b, c)`` compatible with the invariants, with validity."""
    ms = matching_system(t)
    g = ms.common_factor()
    if g.degree < 1:
        return []
    roots = real_roots(g)
    irrational_part = _split_rational_roots(g, roots)
    out = []
    for r in roots:
        if r.is_exact:
            out.append(_exact_candidate(t, r))
        else:
            out.append(_interval_candidate(t, r, irrational_part))
    return out


# decision


@dataclass(frozen=True)
class Certificate:
    chen: ChenParams
    invariants: InvariantTriple
    m0: Fraction
    verdict: Verdict
    candidates: Tuple[Candidate, ...] = ()
    rejected_candidates: Tuple[Candidate, ...] = ()
    degenerate_flags: Tuple[str, ...] = ()
    notes: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.verdict is not Verdict.OUT_OF_SCOPE:
            if (self.verdict is Verdict.NONEQUIVALENT_RESULTANT) != (self.m0 != 0):
                raise ValueError("verdict inconsistent with m0")
        if bool(self.candidates) != (self.verdict is Verdict.CANDIDATES_FOUND):
            raise ValueError("candidates present iff verdict is CandidatesFound")

    @property
    def paper_note(self) -> str:
        return " ".join(self.notes)

    def to_json(self):
        return {
            "chen": self.chen.to_json(),
            "invariants": self.invariants.to_json(),
            "m0": format_rational(self.m0),
            "m0_approx": float(self.m0),
            "verdict": self.verdict.value,
            "candidates": [c.to_json() for c in self.candidates],
            "rejected_candidates": [c.to_json() for c in self.rejected_candidates],
            "degenerate_flags": list(self.degenerate_flags),
            "paper_note": self.paper_note,
        }


_NOTE_RESULTANT = (
    "Equivalent systems have similar Jacobians at corresponding equilibria. "
    "Matching the origin and wing characteristic polynomials forces a common root "
    "of the matching cubic and quadratic in the Lorenz parameter b; their resultant "
    "M0 is nonzero, so no Lorenz system (any a, b, c) is smoothly equivalent."
)
_NOTE_NO_CANDIDATE = (
    "M0 = 0, but every common root of the matching pair yields a Lorenz triple that "
    "violates a necessary condition (a, b > 0, three equilibria, equal spectra). "
    "This is an exhaustive extension of the resultant argument, not the resultant test itself."
)
_NOTE_CANDIDATES = (
    "M0 = 0 and the listed Lorenz triples satisfy every spectral necessary condition; "
    "non-equivalence cannot be certified by this method."
)
_NOTE_SCOPE = (
    "The argument needs a Chen system with three equilibria, a' > 0 and b' > 0 so that "
    "the origins correspond; these parameters fall outside that scope."
)


def decide(p: ChenParams) -> Certificate:
    t = invariants_from_chen(p)
    m0, flags = m0_with_flags(t)
    a, b, _ = p.astuple()
    scope_reasons = []
    if existence_product(p) <= 0:
        scope_reasons.append("b'(2c'-a') <= 0: fewer than three equilibria")
    if a <= 0:
        scope_reasons.append("a' <= 0")
    if b <= 0:
        scope_reasons.append("b' <= 0")
    if scope_reasons:
        return Certificate(p, t, m0, Verdict.OUT_OF_SCOPE, degenerate_flags=tuple(flags),
                           notes=(_NOTE_SCOPE, "Failed: " + "; ".join(scope_reasons) + "."))
    if m0 != 0:
        return Certificate(p, t, m0, Verdict.NONEQUIVALENT_RESULTANT,
                           degenerate_flags=tuple(flags), notes=(_NOTE_RESULTANT,))
    cands = recover_lorenz_candidates(t)
    kept = tuple(c for c in cands if c.valid is not False)
    rejected = tuple(c for c in cands if c.valid is False)
    if kept:
        return Certificate(p, t, m0, Verdict.CANDIDATES_FOUND, kept, rejected,
                           tuple(flags), (_NOTE_CANDIDATES,))
    return Certificate(p, t, m0, Verdict.NONEQUIVALENT_NO_CANDIDATE, (), rejected,
                       tuple(flags), (_NOTE_NO_CANDIDATE,))
