"""Certified complex root isolation over Q and exact algebraic-number tests.

Roots are approximated in floating point (simultaneous iteration via
mpmath) and then *certified* with exact rational arithmetic: a Pellet test
on the Taylor shift of the squarefree part proves that a disk contains
exactly one root.  Boxes are axis-aligned rectangles with rational
endpoints; all decisions (equality, membership, "is a root of q") are exact
and terminate by refinement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath as mp

from .errors import ZeroPolynomial
from .polyalg import (
    QQ,
    MultiPoly,
    unit_normalize,
    up_deriv,
    up_divmod_field,
    up_gcd_monic,
    up_trim,
)

_SQRT_BITS = 64


def sqrt_lower(q: Fraction) -> Fraction:
    """Rational lower bound for sqrt(q), q >= 0."""
    if q < 0:
        raise ValueError("negative radicand")
    n = q.numerator * q.denominator
    scale = 1 << _SQRT_BITS
    s = isqrt(n * scale * scale)
    return Fraction(s, q.denominator * scale)


def sqrt_upper(q: Fraction) -> Fraction:
    """Rational upper bound for sqrt(q), q >= 0."""
    if q < 0:
        raise ValueError("negative radicand")
    n = q.numerator * q.denominator
    scale = 1 << _SQRT_BITS
    s = isqrt(n * scale * scale)
    return Fraction(s + 1, q.denominator * scale)


class QI:
    """Gaussian rational: exact complex number with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        return QI(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return QI(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return QI(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self):
        return QI(-self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        return self.re == other.re and self.im == other.im

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"QI({self.re}, {self.im})"


def _interval_mul(alo, ahi, blo, bhi):
    ps = (alo * blo, alo * bhi, ahi * blo, ahi * bhi)
    return min(ps), max(ps)


@dataclass(frozen=True)
class Box:
    """Closed axis-aligned rectangle in C with rational corners."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    def width(self) -> Fraction:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def center(self) -> QI:
        return QI((self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2)

    def contains(self, z: QI) -> bool:
        return (
            self.re_lo <= z.re <= self.re_hi and self.im_lo <= z.im <= self.im_hi
        )

    def intersects(self, other: "Box") -> bool:
        return not (
            self.re_hi < other.re_lo
            or other.re_hi < self.re_lo
            or self.im_hi < other.im_lo
            or other.im_hi < self.im_lo
        )

    def intersection(self, other: "Box") -> "Box":
        return Box(
            max(self.re_lo, other.re_lo),
            min(self.re_hi, other.re_hi),
            max(self.im_lo, other.im_lo),
            min(self.im_hi, other.im_hi),
        )

    def hull(self, other: "Box") -> "Box":
        return Box(
            min(self.re_lo, other.re_lo),
            max(self.re_hi, other.re_hi),
            min(self.im_lo, other.im_lo),
            max(self.im_hi, other.im_hi),
        )

    def add(self, other: "Box") -> "Box":
        return Box(
            self.re_lo + other.re_lo,
            self.re_hi + other.re_hi,
            self.im_lo + other.im_lo,
            self.im_hi + other.im_hi,
        )

    def mul(self, other: "Box") -> "Box":
        aa = _interval_mul(self.re_lo, self.re_hi, other.re_lo, other.re_hi)
        bb = _interval_mul(self.im_lo, self.im_hi, other.im_lo, other.im_hi)
        ab = _interval_mul(self.re_lo, self.re_hi, other.im_lo, other.im_hi)
        ba = _interval_mul(self.im_lo, self.im_hi, other.re_lo, other.re_hi)
        return Box(aa[0] - bb[1], aa[1] - bb[0], ab[0] + ba[0], ab[1] + ba[1])

    def excludes_zero(self) -> bool:
        return (
            self.re_lo > 0 or self.re_hi < 0 or self.im_lo > 0 or self.im_hi < 0
        )

    @staticmethod
    def point(z: QI) -> "Box":
        return Box(z.re, z.re, z.im, z.im)

    @staticmethod
    def around(z: QI, halfwidth: Fraction) -> "Box":
        return Box(z.re - halfwidth, z.re + halfwidth, z.im - halfwidth, z.im + halfwidth)


def eval_box(coeffs, box: Box) -> Box:
    """Interval Horner evaluation of a Fraction-coefficient polynomial."""
    acc = Box(Fraction(0), Fraction(0), Fraction(0), Fraction(0))
    for c in reversed(coeffs):
        acc = acc.mul(box).add(Box(Fraction(c), Fraction(c), Fraction(0), Fraction(0)))
    return acc


def taylor_shift(coeffs, c: QI):
    """Coefficients of p(z + c) from those of p(z), exactly."""
    b = [QI(fr) if not isinstance(fr, QI) else fr for fr in coeffs]
    n = len(b)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            b[j] = b[j] + c * b[j + 1]
    return b


def pellet_one_root(coeffs, center: QI, radius: Fraction) -> bool:
    """True if p provably has exactly one root in the closed disk D(center, r).

    Pellet's criterion on the shifted polynomial: |b1| r > sum_{j != 1} |b_j| r^j.
    """
    if radius <= 0:
        return False
    b = taylor_shift(coeffs, center)
    if len(b) < 2:
        return False
    lhs = sqrt_lower(b[1].abs2()) * radius
    rhs = Fraction(0)
    rp = Fraction(1)
    for j, bj in enumerate(b):
        if j != 1:
            rhs += sqrt_upper(bj.abs2()) * rp
        rp *= radius
    return lhs > rhs


# ---------------------------------------------------------------------------
# squarefree machinery over Q
# ---------------------------------------------------------------------------


def yun_squarefree(coeffs):
    """Yun decomposition: list of (monic factor, multiplicity), deg >= 1 each."""
    f = up_trim(tuple(Fraction(c) for c in coeffs))
    assert len(f) >= 2
    f = tuple(c / f[-1] for c in f)
    df = up_deriv(f)
    g = up_gcd_monic(QQ, f, df)
    out = []
    if len(g) == 1:
        return [(f, 1)]
    c, _ = up_divmod_field(QQ, f, g)
    w, _ = up_divmod_field(QQ, df, g)
    i = 1
    while len(c) > 1:
        y = up_trim(tuple(a - b for a, b in _padded(w, up_deriv(c))))
        z = up_gcd_monic(QQ, c, y) if y else tuple(cc / c[-1] for cc in c)
        if len(z) > 1:
            out.append((z, i))
        c, _ = up_divmod_field(QQ, c, z)
        num = up_trim(tuple(a - b for a, b in _padded(y, up_deriv(c))))
        w = num
        i += 1
    return out


def _padded(a, b):
    n = max(len(a), len(b))
    for k in range(n):
        yield (a[k] if k < len(a) else Fraction(0), b[k] if k < len(b) else Fraction(0))


def squarefree_coeffs(coeffs):
    """Monic squarefree part of a Fraction coefficient list."""
    f = up_trim(tuple(Fraction(c) for c in coeffs))
    df = up_deriv(f)
    g = up_gcd_monic(QQ, f, df)
    q, _ = up_divmod_field(QQ, f, g)
    return tuple(c / q[-1] for c in q)


# ---------------------------------------------------------------------------
# algebraic numbers
# ---------------------------------------------------------------------------


class AlgebraicNumber:
    """A complex algebraic number: squarefree defining polynomial over Q,
    a certified isolating box, and the multiplicity it carried in the
    polynomial it was isolated from."""

    __slots__ = ("defining", "var", "box", "multiplicity", "_coeffs")

    def __init__(self, defining: MultiPoly, var: str, box: Box, multiplicity: int = 1):
        self.defining = defining
        self.var = var
        self.box = box
        self.multiplicity = multiplicity
        self._coeffs = defining.univar_fractions(var)

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rational(cls, value, var="t", multiplicity=1):
        value = Fraction(value)
        defining = unit_normalize(
            MultiPoly.variable(var) - MultiPoly.constant(value)
        )
        z = QI(value)
        return cls(defining, var, Box.point(z), multiplicity)

    # -- basic structure ---------------------------------------------------

    def degree(self):
        return len(self._coeffs) - 1

    def is_rational(self):
        return self.degree() == 1

    def rational_value(self) -> Fraction:
        assert self.is_rational()
        return -self._coeffs[0] / self._coeffs[1]

    def __repr__(self):
        c = self.box.center()
        return f"AlgebraicNumber({self.defining.to_str()} ~ {c.to_complex():.6g})"

    # -- refinement --------------------------------------------------------

    def refine(self, width: Fraction) -> "AlgebraicNumber":
        """Same root, box of width <= width, still certified."""
        width = Fraction(width)
        if self.box.width() <= width:
            return self
        if self.is_rational():
            return AlgebraicNumber(
                self.defining,
                self.var,
                Box.point(QI(self.rational_value())),
                self.multiplicity,
            )
        box = _refine_box(self._coeffs, self.box, width)
        return AlgebraicNumber(self.defining, self.var, box, self.multiplicity)

    def approx(self, digits: int = 12) -> complex:
        target = Fraction(1, 10 ** (digits + 3))
        return self.refine(target).box.center().to_complex()

    def approx_str(self, digits: int = 12) -> str:
        if self.is_rational():
            v = self.rational_value()
            if v.denominator == 1:
                return str(v.numerator)
            return _decimal_str(Fraction(v), digits)
        refined = self.refine(Fraction(1, 10 ** (digits + 3)))
        z = refined.box.center()
        re_s = _decimal_str(z.re, digits)
        if refined.box.im_lo <= 0 <= refined.box.im_hi:
            # the refined box straddles the real axis: display as real
            return re_s
        im = z.im
        im_s = _decimal_str(abs(im), digits)
        sign = "+" if im >= 0 else "-"
        return f"{re_s}{sign}{im_s}i"

    def sort_key(self, digits: int = 12):
        z = self.refine(Fraction(1, 10 ** (digits + 3))).box.center()
        scale = 10**digits
        return (
            round(z.re * scale),
            round(z.im * scale),
            self.degree(),
        )


def _decimal_str(q: Fraction, digits: int) -> str:
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = q * 10**digits
    n = scaled.numerator // scaled.denominator
    if 2 * (scaled - n) >= 1:
        n += 1
    whole, frac = divmod(n, 10**digits)
    if frac == 0:
        return f"{sign}{whole}"
    frac_s = str(frac).rjust(digits, "0").rstrip("0")
    return f"{sign}{whole}.{frac_s}"


# ---------------------------------------------------------------------------
# isolation
# ---------------------------------------------------------------------------


def _mp_roots(coeffs, dps):
    with mp.workdps(dps):
        cs = [mp.mpf(c.numerator) / mp.mpf(c.denominator) for c in reversed(coeffs)]
        try:
            return [mp.mpc(r) for r in mp.polyroots(cs, maxsteps=200, extraprec=dps * 4)]
        except mp.libmp.libhyper.NoConvergence:
            return None


def _mpf_to_fraction(x) -> Fraction:
    """Exact value of an mpf (mpfs are dyadic rationals)."""
    sign, man, exp, _ = mp.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(man) * (Fraction(2) ** exp if exp >= 0 else Fraction(1, 2**-exp))
    return -v if sign else v


def _certify(coeffs, approx, bits):
    """Certify one root near the approximation: returns (center, radius) with
    exactly one root in D(c, r) and in D(c, 3r), or None."""
    c = QI(_mpf_to_fraction(approx.real), _mpf_to_fraction(approx.imag))
    scale = max(Fraction(1), abs(c.re), abs(c.im))
    r = Fraction(1, 1 << max(4, bits // 2)) * scale
    while r <= 4 * scale + 4:
        if pellet_one_root(coeffs, c, r) and pellet_one_root(coeffs, c, 3 * r):
            return c, r
        r = r * 2
    return None


def isolate_roots(p: MultiPoly, var: str | None = None):
    """One AlgebraicNumber per distinct complex root of p.

    The defining polynomial (shared) is the squarefree part of p; boxes are
    certified to contain exactly one root each and are pairwise disjoint;
    multiplicities add up to deg p.
    """
    if p.is_zero():
        raise ZeroPolynomial("isolate_roots(0)")
    if var is None:
        used = [v for v in p.vars if p.uses(v)]
        if not used:
            return []
        var = used[0]
    coeffs = p.univar_fractions(var)
    if len(coeffs) < 2:
        return []
    factors = yun_squarefree(coeffs)
    sf = (Fraction(1),)
    for fac, _ in factors:
        from .polyalg import up_mul

        sf = up_mul(QQ, sf, fac)
    defining = unit_normalize(MultiPoly.from_fraction_list(sf, var))
    n = len(sf) - 1

    if n == 1:
        root = AlgebraicNumber.from_rational(-sf[0] / sf[1], var)
        mult = factors[0][1] if len(factors) == 1 else _multiplicity_of(root, factors)
        root.multiplicity = mult
        return [root]

    for dps in (30, 60, 120, 240, 480):
        approxs = _mp_roots(sf, dps)
        if approxs is None or len(approxs) != n:
            continue
        bits = int(dps * 3.3)
        certified = []
        ok = True
        for a in approxs:
            got = _certify(sf, a, bits)
            if got is None:
                ok = False
                break
            certified.append(got)
        if not ok:
            continue
        boxes = [Box.around(c, r) for c, r in certified]
        if any(
            boxes[i].intersects(boxes[j])
            for i in range(n)
            for j in range(i + 1, n)
        ):
            continue
        out = []
        for box in boxes:
            alg = AlgebraicNumber(defining, var, box, 1)
            alg.multiplicity = (
                factors[0][1] if len(factors) == 1 else _multiplicity_of(alg, factors)
            )
            out.append(alg)
        assert sum(a.multiplicity for a in out) == len(coeffs) - 1
        return out
    raise ArithmeticError("root certification failed at maximum precision")


def _multiplicity_of(alg: AlgebraicNumber, factors) -> int:
    """Which Yun factor vanishes at alg: decided exactly by refinement."""
    candidates = list(factors)
    box = alg.box
    while len(candidates) > 1:
        keep = []
        for fac, m in candidates:
            val = eval_box(fac, box)
            if not val.excludes_zero():
                keep.append((fac, m))
        if len(keep) >= 1:
            candidates = keep
        if len(candidates) > 1:
            box = _refine_box(alg._coeffs, box, box.width() / 4)
    return candidates[0][1]


def _refine_box(coeffs, box: Box, width: Fraction) -> Box:
    """Shrink a certified isolating box below the requested width."""
    import math

    current = box
    wf = float(width)
    need_dps = max(30, int(-math.log10(wf)) + 15 if wf < 1 else 30)
    for _ in range(8):
        with mp.workdps(need_dps):
            cs = [mp.mpf(c.numerator) / mp.mpf(c.denominator) for c in coeffs]
            dcs = _deriv_mp(cs)
            zz = mp.mpc(float(current.center().re), float(current.center().im))
            for _ in range(need_dps):
                dv = _horner_mp(dcs, zz)
                if dv == 0:
                    break
                step = _horner_mp(cs, zz) / dv
                zz = zz - step
                if abs(step) < mp.mpf(10) ** (-need_dps + 4):
                    break
            got = _certify(coeffs, zz, int(need_dps * 3.3))
        if got is not None:
            c, r = got
            nb = Box.around(c, r)
            if nb.intersects(current):
                current = nb.intersection(current)
                if current.width() <= width:
                    return current
        need_dps *= 2
    raise ArithmeticError("box refinement failed to converge")


def _horner_mp(cs, z):
    acc = mp.mpc(0)
    for c in reversed(cs):
        acc = acc * z + c
    return acc


def _deriv_mp(cs):
    return [c * k for k, c in enumerate(cs)][1:]


# ---------------------------------------------------------------------------
# exact decisions
# ---------------------------------------------------------------------------


def is_root_of(a: AlgebraicNumber, q: MultiPoly) -> bool:
    """Exact decision: does q vanish at the algebraic number a."""
    if q.is_zero():
        return True
    qc = q.univar_fractions(a.var) if q.uses(a.var) else (q.constant_value(),)
    qc = up_trim(tuple(Fraction(c) for c in qc))
    if len(qc) == 1:
        return False
    if a.is_rational():
        from .polyalg import up_eval

        return up_eval(QQ, qc, a.rational_value()) == 0
    d = up_gcd_monic(QQ, a._coeffs, qc)
    if len(d) == 1:
        return False
    e, rem = up_divmod_field(QQ, a._coeffs, d)
    assert not rem
    if len(e) == 1:
        return True
    box = a.box
    while True:
        if eval_box(d, box).excludes_zero():
            return False
        if eval_box(e, box).excludes_zero():
            return True
        box = _refine_box(a._coeffs, box, box.width() / 4)


def equal(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    """Exact equality of two algebraic numbers."""
    if a.is_rational() and b.is_rational():
        return a.rational_value() == b.rational_value()
    if not a.box.intersects(b.box):
        return False
    g = up_gcd_monic(QQ, a._coeffs, b._coeffs)
    if len(g) == 1:
        return False
    gp = MultiPoly.from_fraction_list(g, a.var)
    if not is_root_of(a, gp) or not is_root_of(b, gp):
        return False
    boxa, boxb = a.box, b.box
    while True:
        if not boxa.intersects(boxb):
            return False
        hull = boxa.hull(boxb)
        c = hull.center()
        rad = (hull.re_hi - hull.re_lo) / 2 + (hull.im_hi - hull.im_lo) / 2
        if rad > 0 and pellet_one_root(g, c, rad):
            return True
        if rad == 0:
            return True
        boxa = _refine_box(a._coeffs, boxa, boxa.width() / 4)
        boxb = _refine_box(b._coeffs, boxb, boxb.width() / 4)


def member(a: AlgebraicNumber, family) -> bool:
    return any(equal(a, b) for b in family)


def multiplicity_in(a: AlgebraicNumber, q: MultiPoly) -> int:
    """Multiplicity of a as a root of q (0 if not a root)."""
    k = 0
    cur = q
    while not cur.is_zero() and is_root_of(a, cur):
        k += 1
        cur = cur.derivative(a.var)
    return k
