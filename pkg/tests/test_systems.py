import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chen_lorenz.exact import Surd, determinant
from chen_lorenz.systems import (
    ChenParams,
    LorenzParams,
    MissingEquilibrium,
    SystemKind,
    charpoly_at,
    charpoly_of_matrix,
    chen_field,
    equilibria,
    jacobian,
    jacobian_det_at_equilibrium,
    lorenz_field,
    make_params,
    vector_field,
    wing_charpoly_closed_form,
)

F = Fraction
LORENZ = LorenzParams(10, F(8, 3), 28)
CHEN = ChenParams(45, 5, 28)

rationals = st.fractions(min_value=-60, max_value=60, max_denominator=12)


def random_triple(rng, kind):
    """Random rational parameters with three equilibria."""
    while True:
        a, b, c = (F(rng.randint(-80, 80), rng.randint(1, 9)) for _ in range(3))
        p = make_params(kind, a, b, c)
        if equilibria(p).count == 3:
            return p


def test_lorenz_field_examples():
    zero = F(0)
    assert lorenz_field(LORENZ, (zero, zero, zero)) == (0, 0, 0)
    assert lorenz_field(LORENZ, (F(1), F(1), F(1))) == (0, 26, F(-5, 3))
    r = Surd.sqrt(72, -1)
    assert all(v == 0 for v in lorenz_field(LORENZ, (r, r, F(27))))


def test_chen_field_examples():
    zero = F(0)
    assert chen_field(CHEN, (zero, zero, zero)) == (0, 0, 0)
    assert chen_field(ChenParams(35, 3, 28), (F(1), F(1), F(1))) == (0, 20, -2)
    r = Surd.sqrt(55, -1)
    assert all(v == 0 for v in chen_field(CHEN, (r, r, F(11))))


def test_params_coerce_to_rationals():
    p = LorenzParams("8/3", "5/2", 1)
    assert p.astuple() == (F(8, 3), F(5, 2), F(1))
    assert p.kind is SystemKind.LORENZ and CHEN.kind is SystemKind.CHEN
    with pytest.raises((TypeError, ValueError)):
        LorenzParams(0.1, 1, 1)


def test_equilibria_examples():
    lor = equilibria(LORENZ)
    assert lor.count == 3 and lor.radicand == 72
    assert lor.labels == ["P1", "P2", "P3"]
    assert lor["P3"].point == (Surd.sqrt(72), Surd.sqrt(72), 27)
    che = equilibria(CHEN)
    assert che.count == 3 and che.radicand == 55
    assert che["Q2"].point == (Surd.sqrt(55, -1), Surd.sqrt(55, -1), 11)
    assert str(che["Q2"].point[0]) == "-sqrt(55)"
    single = equilibria(LorenzParams(10, F(8, 3), 1))
    assert single.count == 1 and single.degenerate_merge
    with pytest.raises(MissingEquilibrium):
        single["P2"]


def test_wing_points_are_mirror_images():
    eqs = equilibria(CHEN)
    p2, p3 = eqs["Q2"].point, eqs["Q3"].point
    assert p2[0] == -p3[0] and p2[1] == -p3[1] and p2[2] == p3[2]


def test_equilibrium_residuals_random():
    rng = random.Random(11)
    for kind in (SystemKind.LORENZ, SystemKind.CHEN):
        for _ in range(100):
            p = random_triple(rng, kind)
            for e in equilibria(p).points:
                assert vector_field(p, e.point) == (0, 0, 0)


def test_jacobian_examples():
    a, b, c = LORENZ.astuple()
    zero = (F(0),) * 3
    assert jacobian(LORENZ, zero).tolist() == [[-a, a, 0], [c, -1, 0], [0, 0, -b]]
    a2, b2, c2 = CHEN.astuple()
    assert jacobian(CHEN, zero).tolist() == [[-a2, a2, 0], [c2 - a2, c2, 0], [0, 0, -b2]]
    assert jacobian(LORENZ, (F(1), F(2), F(3))).tolist() == [[-10, 10, 0], [25, -1, -1], [2, 1, F(-8, 3)]]


def test_jacobian_determinant_examples():
    assert jacobian_det_at_equilibrium(LORENZ, "P1") == 720
    assert jacobian_det_at_equilibrium(CHEN, "Q1") == 2475
    assert jacobian_det_at_equilibrium(CHEN, "Q2") == -4950
    with pytest.raises(MissingEquilibrium):
        jacobian_det_at_equilibrium(ChenParams(2, 3, 1), "Q2")


def test_jacobian_determinant_closed_forms_match_matrix():
    rng = random.Random(5)
    for kind in (SystemKind.LORENZ, SystemKind.CHEN):
        for _ in range(40):
            p = random_triple(rng, kind)
            for e in equilibria(p).points:
                d = determinant(jacobian(p, e.point))
                assert d == jacobian_det_at_equilibrium(p, e.label)


def test_charpoly_examples():
    assert charpoly_at(CHEN, "Q1").astuple() == (22, -410, -2475)
    assert charpoly_at(LORENZ, "P2").c1 == F(304, 3)
    assert charpoly_at(LORENZ, "P2").to_json() == {"c2": "41/3", "c1": "304/3", "c0": "1440"}


@settings(max_examples=200)
@given(rationals, rationals, rationals)
def test_origin_charpoly_vanishes_at_minus_b(a, b, c):
    assert charpoly_at(LorenzParams(a, b, c), "P1")(-b) == 0
    assert charpoly_at(ChenParams(a, b, c), "Q1")(-b) == 0


@settings(max_examples=100)
@given(rationals, rationals, rationals)
def test_origin_closed_forms_match_jacobian(a, b, c):
    zero = (F(0),) * 3
    for p in (LorenzParams(a, b, c), ChenParams(a, b, c)):
        m = jacobian(p, zero)
        cp = charpoly_at(p, p.kind.labels[0])
        assert cp == charpoly_of_matrix(m)
        assert cp.c0 == -determinant(m)
        assert cp.c2 == -m.trace()


def test_wing_charpolys_agree_and_match_closed_form():
    rng = random.Random(17)
    for kind in (SystemKind.LORENZ, SystemKind.CHEN):
        for _ in range(50):
            p = random_triple(rng, kind)
            _, l2, l3 = kind.labels
            cp2, cp3 = charpoly_at(p, l2), charpoly_at(p, l3)
            assert cp2 == cp3 == wing_charpoly_closed_form(p)
            eq = equilibria(p)[l2]
            assert cp2.c0 == -determinant(jacobian(p, eq.point))


def test_wing_closed_form_regression():
    assert wing_charpoly_closed_form(LORENZ).astuple() == (F(41, 3), F(304, 3), 1440)
    assert wing_charpoly_closed_form(CHEN).astuple() == (22, 140, 4950)
