"""Kernel arithmetic: ring axioms, homogenization, number-field splitting."""

import random
from fractions import Fraction

import pytest

from planebif.errors import DegreeTooSmall, DivisionByZero
from planebif.polyalg import (
    QQ,
    FunctionField,
    MultiPoly,
    NumberField,
    SplitRequest,
    up_from_fractions,
)

X = MultiPoly.variable("x")
Y = MultiPoly.variable("y")
T = MultiPoly.variable("t")


def random_poly(rng, variables=("x", "y"), max_terms=6, max_exp=3):
    p = MultiPoly.zero()
    for _ in range(rng.randint(1, max_terms)):
        mono = MultiPoly.constant(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        for v in variables:
            mono = mono * MultiPoly.variable(v) ** rng.randint(0, max_exp)
        p = p + mono
    return p


def test_difference_of_squares():
    assert (X + Y) * (X - Y) == X**2 - Y**2


def test_mul_by_zero_absorbs():
    p = X**2 * Y + 3
    assert (p * MultiPoly.zero()).is_zero()


def test_example_pencil_expansion():
    pencil = (X * Y + 1) - T * (X**2 + 1)
    assert pencil == -T * X**2 + X * Y + 1 - T
    assert pencil.degree() == 3
    assert pencil.degree_in("x") == 2


def test_ring_axioms_randomized():
    rng = random.Random(7)
    for _ in range(120):
        p, q, r = (random_poly(rng) for _ in range(3))
        assert (p + q) * r == p * r + q * r
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p + (-p) == MultiPoly.zero()


def test_substitute_binomial():
    p = X**2 + Y
    out = p.substitute({"x": X + Y})
    assert out == X**2 + 2 * X * Y + Y**2 + Y


def test_substitute_empty_is_identity():
    p = X**3 - T * X * Y + 1 - T
    assert p.substitute({}) == p


def test_substitute_chart_extraction():
    # chart of the projectivized pencil of (x^3+1, x y+1) at [0:1:0]
    Z = MultiPoly.variable("z")
    G = X**3 + Z**3 - T * (X * Y * Z + Z**3)
    chart = G.substitute({"y": MultiPoly.one()})
    assert chart == X**3 - T * X * Z + (1 - T) * Z**3


def test_homogenize_pencil():
    p = X**3 - T * X * Y + (1 - T)
    h = p.homogenize(3)
    Z = MultiPoly.variable("z")
    assert h == X**3 - T * X * Y * Z + (1 - T) * Z**3
    # setting z = 1 recovers p
    assert h.substitute({"z": MultiPoly.one()}) == p


def test_homogenize_constant():
    Z = MultiPoly.variable("z")
    assert MultiPoly.one().homogenize(2) == Z**2


def test_homogenize_broughton():
    Z = MultiPoly.variable("z")
    assert (X + X**2 * Y).homogenize(3) == X * Z**2 + X**2 * Y


def test_homogenize_rejects_small_degree():
    with pytest.raises(DegreeTooSmall):
        (X**2).homogenize(1)


def test_homogenize_z1_roundtrip_randomized():
    rng = random.Random(11)
    for _ in range(60):
        p = random_poly(rng, max_terms=12)
        h = p.homogenize(p.degree())
        assert h.substitute({"z": MultiPoly.one()}) == p
        # homogeneous of the requested degree
        degs = {sum(e) for e in h.terms}
        assert degs == {p.degree()}


def test_graded_lex_printing_is_stable():
    p = 1 + X + X * Y + Y**2 - T
    assert str(p) == str(1 + (-T) + Y**2 + X * Y + X)


# -- number fields ----------------------------------------------------------


def gaussian_field():
    return NumberField(QQ, up_from_fractions(QQ, [1, 0, 1]))  # u^2 + 1


def test_nf_invert_gaussian():
    K = gaussian_field()
    u = K.generator()
    assert K.invert(u) == -u
    assert u * K.invert(u) == K.one


def test_nf_invert_rational_constant():
    K = gaussian_field()
    two = K.from_fraction(2)
    assert K.invert(two) == K.from_fraction(Fraction(1, 2))


def test_nf_zero_divisor_splits():
    K = NumberField(QQ, up_from_fractions(QQ, [-1, 0, 1]))  # u^2 - 1
    e = K.element(up_from_fractions(QQ, [-1, 1]))  # u - 1
    with pytest.raises(SplitRequest) as exc:
        K.invert(e)
    f1, f2 = exc.value.factors
    # monic factors u - 1 and u + 1, in either order
    got = {tuple(f1), tuple(f2)}
    assert got == {
        up_from_fractions(QQ, [-1, 1]),
        up_from_fractions(QQ, [1, 1]),
    }
    # branch degrees recombine to the unsplit modulus degree
    assert (len(f1) - 1) + (len(f2) - 1) == K.degree


def test_nf_invert_zero_raises():
    K = gaussian_field()
    with pytest.raises(DivisionByZero):
        K.invert(K.zero)


def test_nf_random_inverses():
    rng = random.Random(3)
    K = NumberField(QQ, up_from_fractions(QQ, [2, 0, 1]))  # u^2 + 2, irreducible
    for _ in range(50):
        coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(2)]
        e = K.element(up_from_fractions(QQ, coeffs))
        if not e:
            continue
        assert e * K.invert(e) == K.one


def test_nf_split_rerun_consistent():
    # after a split, re-running the inversion per branch succeeds and the
    # branch moduli tile the original one
    K = NumberField(QQ, up_from_fractions(QQ, [-1, 0, 1]))
    e_data = [Fraction(-1), Fraction(1)]
    try:
        K.invert(K.element(up_from_fractions(QQ, e_data)))
        assert False, "expected a split"
    except SplitRequest as s:
        total = 0
        for fac in s.factors:
            Kb = NumberField(QQ, fac) if len(fac) > 2 else None
            total += len(fac) - 1
            if Kb is None:
                # degree-1 branch: u is rational, evaluate directly
                continue
        assert total == 2


# -- function field ---------------------------------------------------------


def test_function_field_basic():
    F = FunctionField(QQ)
    t = F.gen()
    e = (t**2 - 1) / (t - 1)
    assert e == t + 1
    assert F.decide_zero(e - t - 1)


def test_function_field_records_candidates():
    rec = []
    F = FunctionField(QQ, recorder=rec)
    t = F.gen()
    e = t - 2
    F.invert(e)
    assert any(tuple(r) == (Fraction(-2), Fraction(1)) for r in rec)
