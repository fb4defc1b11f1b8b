"""Resultants, discriminants, gcds and squarefree parts of MultiPolys.

Everything runs over the polynomial ring in the non-eliminated variables
with rational coefficients.  The pseudo-remainder sequences are subresultant
PRSs, which keep the coefficient growth polynomial; a naive Euclidean PRS
over Q[t] blows up on the parametric discriminants this pipeline feeds in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstantInVariable, ZeroOperand
from .polyalg import MultiPoly, exact_div, unit_normalize


@dataclass(frozen=True)
class Discriminant:
    """disc_var(p) together with the normalization convention used."""

    poly: MultiPoly
    eliminated: str
    normalization: str


def _prem(A: MultiPoly, B: MultiPoly, var: str) -> MultiPoly:
    """Pseudo-remainder: lc(B)^(dA-dB+1) * A  mod  B, in var."""
    dB = B.degree_in(var)
    lcB = B.coeff_of(var, dB)
    xv = MultiPoly.variable(var)
    R = A
    steps = A.degree_in(var) - dB + 1
    while not R.is_zero() and R.degree_in(var) >= dB:
        dR = R.degree_in(var)
        lcR = R.coeff_of(var, dR)
        R = lcB * R - lcR * xv ** (dR - dB) * B
        steps -= 1
    # pad with the remaining lc(B) powers so the factor is exactly dA-dB+1
    for _ in range(steps):
        R = lcB * R
    return R


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant of p and q with respect to var (Sylvester determinant).

    Computed by a subresultant PRS; agrees with the determinant of the
    Sylvester matrix of p and q viewed in var.
    """
    if p.is_zero() or q.is_zero():
        raise ZeroOperand("resultant of the zero polynomial")
    dp, dq = p.degree_in(var), q.degree_in(var)
    if dp == 0 and dq == 0:
        return MultiPoly.one()
    if dp == 0:
        return p**dq
    if dq == 0:
        return q**dp
    s = 1
    A, B = p, q
    if dp < dq:
        A, B = B, A
        if dp * dq % 2:
            s = -s
    g = MultiPoly.one()
    h = MultiPoly.one()
    while B.degree_in(var) > 0:
        dA, dB = A.degree_in(var), B.degree_in(var)
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _prem(A, B, var)
        A = B
        if R.is_zero():
            return MultiPoly.zero()
        B = exact_div(R, g * h**delta)
        g = A.coeff_of(var, A.degree_in(var))
        if delta > 0:
            h = exact_div(g**delta, h ** (delta - 1))
    # B is a nonzero element of the coefficient ring
    dA = A.degree_in(var)
    res = exact_div(B**dA, h ** (dA - 1)) if dA > 1 else B**dA
    return res.scale(Fraction(s)).drop_var(var)


def discriminant(p: MultiPoly, var: str) -> Discriminant:
    """Classical discriminant: (-1)^(d(d-1)/2) Res(p, p') / lc(p), in var."""
    d = p.degree_in(var)
    if d < 1:
        raise ConstantInVariable(f"{var}-degree is {d}")
    res = resultant(p, p.derivative(var), var)
    lc = p.coeff_of(var, d).drop_var(var)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    poly = exact_div(res, lc).scale(Fraction(sign))
    return Discriminant(
        poly=poly,
        eliminated=var,
        normalization="(-1)^(d(d-1)/2) res(p, dp/dvar)/lc_var(p)",
    )


# ---------------------------------------------------------------------------
# gcd / content machinery
# ---------------------------------------------------------------------------


def content(p: MultiPoly, var: str) -> MultiPoly:
    """Content of p viewed in var: gcd of its coefficients."""
    coeffs = [c for c in p.as_univar(var) if not c.is_zero()]
    if not coeffs:
        return MultiPoly.zero()
    acc = coeffs[0]
    for c in coeffs[1:]:
        acc = gcd_poly(acc, c)
        if acc.is_constant():
            break
    return unit_normalize(acc)


def primitive_part(p: MultiPoly, var: str) -> MultiPoly:
    if p.is_zero():
        return p
    return exact_div(p, content(p, var))


def gcd_poly(p: MultiPoly, q: MultiPoly, var: str | None = None) -> MultiPoly:
    """Primitive gcd via subresultant PRS; unit-normalized.

    With var omitted, the main variable is chosen automatically, which makes
    this the general multivariate gcd for the bivariate/trivariate cases the
    pipeline needs.
    """
    if p.is_zero():
        return unit_normalize(q)
    if q.is_zero():
        return unit_normalize(p)
    if var is None:
        used = [v for v in dict.fromkeys(p.vars + q.vars) if p.uses(v) or q.uses(v)]
        if not used:
            return MultiPoly.one()
        var = used[0]
    if not p.uses(var) and not q.uses(var):
        return gcd_poly(p.drop_var(var), q.drop_var(var))
    if not p.uses(var):
        return gcd_poly(p.drop_var(var), content(q, var))
    if not q.uses(var):
        return gcd_poly(q.drop_var(var), content(p, var))
    cp, cq = content(p, var), content(q, var)
    A, B = exact_div(p, cp), exact_div(q, cq)
    c = gcd_poly(cp, cq)
    if A.degree_in(var) < B.degree_in(var):
        A, B = B, A
    while True:
        R = _prem(A, B, var)
        if R.is_zero():
            break
        if not R.uses(var):
            return unit_normalize(c)
        A, B = B, primitive_part(R, var)
    return unit_normalize(c * primitive_part(B, var))


def squarefree_part(p: MultiPoly, var: str) -> MultiPoly:
    """p divided by gcd(p, dp/dvar); unit-normalized."""
    if p.degree_in(var) < 1:
        return unit_normalize(p)
    g = gcd_poly(p, p.derivative(var), var)
    return unit_normalize(exact_div(p, g))
