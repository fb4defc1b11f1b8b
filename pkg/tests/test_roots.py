"""Certified root isolation: completeness, refinement, exact identity tests."""

import random
from fractions import Fraction

import pytest

from planebif.errors import ZeroPolynomial
from planebif.polyalg import MultiPoly
from planebif.roots import (
    QI,
    AlgebraicNumber,
    Box,
    equal,
    eval_box,
    is_root_of,
    isolate_roots,
    member,
    pellet_one_root,
    sqrt_lower,
    sqrt_upper,
    taylor_shift,
)

T = MultiPoly.variable("t")


def test_sqrt_bounds_bracket():
    for q in (Fraction(2), Fraction(5, 7), Fraction(10) ** 12, Fraction(1, 10**9)):
        lo, hi = sqrt_lower(q), sqrt_upper(q)
        assert lo * lo <= q <= hi * hi
        assert hi - lo < Fraction(1, 10**15) * max(1, hi)


def test_taylor_shift_square():
    # (z+1)^2 = z^2 + 2z + 1
    out = taylor_shift((Fraction(0), Fraction(0), Fraction(1)), QI(1))
    assert [(c.re, c.im) for c in out] == [(1, 0), (2, 0), (1, 0)]


def test_pellet_unit_disk_of_shifted_linear():
    # p = t - 5: exactly one root in D(5, 1), none in D(0, 1)
    p = (Fraction(-5), Fraction(1))
    assert pellet_one_root(p, QI(5), Fraction(1))
    assert not pellet_one_root(p, QI(0), Fraction(1))


def test_isolate_cubic_power():
    # q_3(t) = 4 t^3 from the (x^3+1, xy+1) fixture: single root 0, mult 3
    roots = isolate_roots(4 * T**3)
    assert len(roots) == 1
    r = roots[0]
    assert r.multiplicity == 3
    assert r.is_rational() and r.rational_value() == 0
    assert r.box.contains(QI(0))


def test_isolate_gaussian_pair():
    roots = isolate_roots(T**2 + 1)
    assert len(roots) == 2
    assert all(r.multiplicity == 1 for r in roots)
    b1, b2 = roots[0].box, roots[1].box
    assert not b1.intersects(b2)
    ims = sorted(complex(r.approx(8)).imag for r in roots)
    assert abs(ims[0] + 1) < 1e-6 and abs(ims[1] - 1) < 1e-6


def test_isolate_double_rational_root():
    roots = isolate_roots((T - 1) ** 2)
    assert len(roots) == 1
    assert roots[0].multiplicity == 2
    assert roots[0].rational_value() == 1


def test_isolate_zero_poly_raises():
    with pytest.raises(ZeroPolynomial):
        isolate_roots(MultiPoly.zero())


def test_isolate_constant_empty():
    assert isolate_roots(MultiPoly.one() * 5, var="t") == []


def test_refine_sqrt2():
    roots = isolate_roots(T**2 - 2)
    pos = next(r for r in roots if r.approx(6).real > 0)
    tight = pos.refine(Fraction(1, 10**12))
    assert tight.box.width() <= Fraction(1, 10**12)
    # Newton oracle for sqrt(2)
    x = Fraction(3, 2)
    for _ in range(6):
        x = (x + 2 / x) / 2
    assert tight.box.re_lo <= x <= tight.box.re_hi or abs(
        float(tight.box.center().re) - float(x)
    ) < 1e-11
    # idempotent up to containment
    again = tight.refine(Fraction(1, 10**12))
    assert again.box.width() <= tight.box.width()


def test_equal_across_defining_polynomials():
    i_from_quartic = next(
        r for r in isolate_roots(T**4 - 1) if abs(r.approx(8) - 1j) < 1e-6
    )
    i_from_quadratic = next(
        r for r in isolate_roots(T**2 + 1) if abs(r.approx(8) - 1j) < 1e-6
    )
    minus_i = next(
        r for r in isolate_roots(T**2 + 1) if abs(r.approx(8) + 1j) < 1e-6
    )
    assert equal(i_from_quartic, i_from_quadratic)
    assert not equal(i_from_quadratic, minus_i)


def test_member_zero_in_cubic_roots():
    zero = AlgebraicNumber.from_rational(0)
    assert member(zero, isolate_roots(4 * T**3))
    assert not member(AlgebraicNumber.from_rational(1), isolate_roots(4 * T**3))


def test_is_root_of():
    i_root = next(r for r in isolate_roots(T**2 + 1) if r.approx(8).imag > 0)
    assert is_root_of(i_root, T**4 - 1)
    assert not is_root_of(i_root, T**2 - 1)
    assert is_root_of(AlgebraicNumber.from_rational(Fraction(1, 2)), 2 * T - 1)


def test_equal_is_equivalence_on_shared_pool():
    pool = isolate_roots((T**2 + 1) * (T**2 - 2))
    for a in pool:
        assert equal(a, a)
        for b in pool:
            if a is not b:
                assert not equal(a, b)


def test_isolation_completeness_randomized():
    # property suite: planted rational roots with multiplicities are recovered
    rng = random.Random(1234)
    for _ in range(200):
        nroots = rng.randint(1, 4)
        planted = {}
        p = MultiPoly.one()
        used = set()
        for _ in range(nroots):
            val = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            if val in used:
                continue
            used.add(val)
            m = rng.randint(1, 3)
            planted[val] = m
            p = p * (T - MultiPoly.constant(val)) ** m
        roots = isolate_roots(p)
        deg = p.degree_in("t")
        assert sum(r.multiplicity for r in roots) == deg
        assert len(roots) == len(planted)
        for r in roots:
            assert r.is_rational()
            assert planted[r.rational_value()] == r.multiplicity
        boxes = [r.box for r in roots]
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                assert not boxes[i].intersects(boxes[j])


def test_isolation_irrational_and_complex_mix():
    rng = random.Random(99)
    for _ in range(25):
        # random squarefree-ish poly of small degree over Q
        coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(3, 6))]
        coeffs[-1] = Fraction(rng.randint(1, 5))
        p = MultiPoly.from_fraction_list(coeffs, "t")
        from planebif.roots import squarefree_coeffs

        sf = squarefree_coeffs(coeffs)
        roots = isolate_roots(p)
        assert sum(r.multiplicity for r in roots) == len(coeffs) - 1
        assert len(roots) == len(sf) - 1
        boxes = [r.box for r in roots]
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                assert not boxes[i].intersects(boxes[j])


def test_eval_box_contains_true_value():
    rng = random.Random(5)
    for _ in range(50):
        coeffs = tuple(Fraction(rng.randint(-4, 4)) for _ in range(4))
        z = QI(Fraction(rng.randint(-3, 3), 2), Fraction(rng.randint(-3, 3), 2))
        box = Box.around(z, Fraction(1, 8))
        val = eval_box(coeffs, box)
        # exact value at the center must lie inside the interval image
        exact = QI(0)
        for c in reversed(coeffs):
            exact = exact * z + QI(c)
        assert val.re_lo <= exact.re <= val.re_hi
        assert val.im_lo <= exact.im <= val.im_hi


def test_approx_str_formats():
    zero = isolate_roots(4 * T**3)[0]
    assert zero.approx_str(10) == "0"
    one = isolate_roots((T - 1) ** 2)[0]
    assert one.approx_str(10) == "1"
    sqrt2 = next(r for r in isolate_roots(T**2 - 2) if r.approx(6).real > 0)
    assert sqrt2.approx_str(10).startswith("1.414213562")
    i_root = next(r for r in isolate_roots(T**2 + 1) if r.approx(6).imag > 0)
    assert i_root.approx_str(6) in ("0+1i", "0+1.0i", "0+0.999999i", "0+1i")
