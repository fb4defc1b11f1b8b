"""Exact arithmetic kernel.

Three layers live here:

* sparse multivariate polynomials (``MultiPoly``) with exact coefficients,
* coefficient domains: the rationals, number fields ``Q[u]/(m)`` with
  dynamic-evaluation (D5) splitting, and univariate rational function
  fields ``K(t)``,
* dense univariate helper arithmetic over any of those domains, used by
  the elimination / root / local-multiplicity machinery.

All values are immutable after construction and every operation is a pure
function, so everything in this module is safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import DegreeTooSmall, DivisionByZero

# Canonical variable order used for term ordering and printing.  x..u are
# the pipeline's working variables, v is the second extension level, s and
# i only occur in witness-curve expressions.
VAR_ORDER = {"x": 0, "y": 1, "z": 2, "t": 3, "u": 4, "v": 5, "s": 6, "i": 7}


def _var_key(name: str):
    return (VAR_ORDER.get(name, len(VAR_ORDER)), name)


class SplitRequest(Exception):
    """Raised when a zero-divisor is met in a product ring (D5 principle).

    Carries the offending field and the two coprime modulus factors; the
    computation must be re-run once per factor.
    """

    def __init__(self, field, factors):
        super().__init__("zero divisor: modulus splits")
        self.field = field
        self.factors = factors  # pair of monic coefficient tuples


# ---------------------------------------------------------------------------
# coefficient domains
# ---------------------------------------------------------------------------


class RationalDomain:
    """The field Q realized on :class:`fractions.Fraction`."""

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def from_fraction(fr):
        return Fraction(fr)

    @staticmethod
    def decide_zero(c):
        return c == 0

    @staticmethod
    def invert(c):
        if c == 0:
            raise DivisionByZero("1/0 in Q")
        return 1 / Fraction(c)

    @staticmethod
    def to_data(c):
        return Fraction(c)

    def from_data(self, d):
        return Fraction(d)

    def __repr__(self):
        return "QQ"


QQ = RationalDomain()


class NFElement:
    """Element of Q[u]/(m), stored as a reduced coefficient tuple."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs  # ascending, structurally trimmed

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, NFElement)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def _coerce(self, other):
        if isinstance(other, NFElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        base = self.field.base
        return NFElement(self.field, up_add(base, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * self.field.invert(other)

    def __pow__(self, n):
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"NF({self.coeffs})"


class NumberField:
    """Q-algebra ``base[u]/(modulus)`` with a squarefree monic modulus.

    The modulus is *not* required to be irreducible; zero-divisor tests and
    inversions raise :class:`SplitRequest` when the modulus must split.
    """

    def __init__(self, base, modulus):
        self.base = base
        self.modulus = tuple(modulus)
        if len(self.modulus) < 2:
            raise ValueError("modulus must have positive degree")
        lc = self.modulus[-1]
        if not (lc == base.one):
            raise ValueError("modulus must be monic")
        self.zero = NFElement(self, ())
        self.one = NFElement(self, (base.one,))

    @property
    def degree(self):
        return len(self.modulus) - 1

    def element(self, coeffs):
        cs = up_trim(tuple(coeffs))
        if len(cs) >= len(self.modulus):
            cs = up_rem_monic(self.base, cs, self.modulus)
        return NFElement(self, cs)

    def generator(self):
        return self.element((self.base.zero, self.base.one))

    def from_fraction(self, fr):
        fr = Fraction(fr)
        if fr == 0:
            return self.zero
        return NFElement(self, (self.base.from_fraction(fr),))

    def mul(self, a, b):
        prod = up_mul(self.base, a.coeffs, b.coeffs)
        return NFElement(self, up_rem_monic(self.base, prod, self.modulus))

    def decide_zero(self, e):
        if not e.coeffs:
            return True
        g = up_gcd_monic(self.base, self.modulus, e.coeffs)
        if len(g) == 1:
            return False
        # proper common factor: the modulus splits into g and modulus // g
        cof, rem = up_divmod_field(self.base, self.modulus, g)
        assert not rem
        raise SplitRequest(self, (tuple(g), tuple(cof)))

    def invert(self, e):
        if not e.coeffs:
            raise DivisionByZero("inversion of 0 in number field")
        g, s, _ = up_xgcd(self.base, e.coeffs, self.modulus)
        if len(g) == 1:
            inv = up_scale(self.base, s, self.base.invert(g[0]))
            return self.element(inv)
        cof, rem = up_divmod_field(self.base, self.modulus, g)
        assert not rem
        raise SplitRequest(self, (tuple(g), tuple(cof)))

    def to_data(self, e):
        return tuple(self.base.to_data(c) for c in e.coeffs)

    def from_data(self, d):
        return self.element(tuple(self.base.from_data(c) for c in d))

    def __repr__(self):
        return f"NumberField(deg {self.degree} over {self.base!r})"


class FFElement:
    """Element of K(t): a reduced fraction of dense K[t] polynomials."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return (
            isinstance(other, FFElement)
            and self.field is other.field
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((id(self.field), self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, FFElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        base = self.field.base
        num = up_add(
            base,
            up_mul(base, self.num, other.den),
            up_mul(base, other.num, self.den),
        )
        return self.field.make(num, up_mul(base, self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return FFElement(self.field, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        base = self.field.base
        return self.field.make(
            up_mul(base, self.num, other.num), up_mul(base, self.den, other.den)
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * self.field.invert(other)

    def __pow__(self, n):
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"FF({self.num}/{self.den})"


class FunctionField:
    """Rational function field K(t) over a coefficient domain K.

    A ``recorder`` list, when supplied, collects every numerator in t whose
    non-vanishing the computation relied on; the roots of those polynomials
    are exactly the parameter values where a specialized run may take a
    different path.
    """

    def __init__(self, base, recorder: Optional[list] = None):
        self.base = base
        self.recorder = recorder
        self.zero = FFElement(self, (), (base.one,))
        self.one = FFElement(self, (base.one,), (base.one,))

    def make(self, num, den):
        num = up_trim(tuple(num))
        den = up_trim(tuple(den))
        if not den:
            raise DivisionByZero("zero denominator in K(t)")
        if not num:
            return FFElement(self, (), (self.base.one,))
        if len(num) > 1 or len(den) > 1:
            g = up_gcd_monic(self.base, num, den)
            if len(g) > 1:
                num, r1 = up_divmod_field(self.base, num, g)
                den, r2 = up_divmod_field(self.base, den, g)
                assert not r1 and not r2
        # normalize the denominator monic
        lc = den[-1]
        if not (lc == self.base.one):
            inv = self.base.invert(lc)
            num = up_scale(self.base, num, inv)
            den = up_scale(self.base, den, inv)
        return FFElement(self, tuple(num), tuple(den))

    def poly(self, coeffs):
        return self.make(tuple(coeffs), (self.base.one,))

    def from_fraction(self, fr):
        fr = Fraction(fr)
        if fr == 0:
            return self.zero
        return FFElement(self, (self.base.from_fraction(fr),), (self.base.one,))

    def gen(self):
        return FFElement(self, (self.base.zero, self.base.one), (self.base.one,))

    def _record(self, num):
        if self.recorder is not None and len(num) > 1:
            self.recorder.append(tuple(num))

    def decide_zero(self, e):
        for c in reversed(e.num):
            if not self.base.decide_zero(c):
                self._record(e.num)
                return False
        return True

    def invert(self, e):
        if self.decide_zero(e):
            raise DivisionByZero("inversion of 0 in K(t)")
        self._record(e.num)
        return self.make(e.den, e.num)

    def __repr__(self):
        return f"FunctionField(t over {self.base!r})"


# ---------------------------------------------------------------------------
# dense univariate arithmetic over a domain
# ---------------------------------------------------------------------------


def up_trim(cs):
    cs = tuple(cs)
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return cs[:n]


def up_add(dom, a, b):
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else dom.zero
        y = b[k] if k < len(b) else dom.zero
        out.append(x + y)
    return up_trim(out)


def up_sub(dom, a, b):
    return up_add(dom, a, tuple(-c for c in b))

def up_mul(dom, a, b):
    if not a or not b:
        return ()
    out = [dom.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return up_trim(out)


def up_scale(dom, a, c):
    if not c:
        return ()
    return up_trim(tuple(x * c for x in a))


def up_decided_trim(dom, a):
    """Trim with *decided* (branch-refining) zero tests on the top coefficients."""
    a = list(a)
    while a and dom.decide_zero(a[-1]):
        a.pop()
    return tuple(a)


def up_divmod_field(dom, a, b):
    """Division with remainder; the leading coefficient of b must be decided
    nonzero (callers pass b already decided-trimmed or monic)."""
    b = up_trim(b)
    if not b:
        raise DivisionByZero("division by zero polynomial")
    inv = dom.invert(b[-1])
    rem = list(a)
    db = len(b) - 1
    q = [dom.zero] * max(0, len(a) - db)
    while len(up_trim(rem)) - 1 >= db:
        rem = list(up_trim(rem))
        k = len(rem) - 1 - db
        c = rem[-1] * inv
        q[k] = c
        for j in range(len(b)):
            rem[k + j] = rem[k + j] - c * b[j]
        rem[-1] = dom.zero
    return up_trim(q), up_trim(rem)


def up_rem_monic(dom, a, m):
    """Remainder of a modulo a monic m: no inversions needed."""
    rem = list(a)
    dm = len(m) - 1
    while len(up_trim(rem)) - 1 >= dm:
        rem = list(up_trim(rem))
        k = len(rem) - 1 - dm
        c = rem[-1]
        for j in range(len(m)):
            rem[k + j] = rem[k + j] - c * m[j]
        rem[-1] = dom.zero
    return up_trim(rem)


def up_gcd_monic(dom, a, b):
    """Monic gcd by the Euclidean algorithm with decided degrees.

    May raise SplitRequest through the domain's decisions.
    """
    a = up_decided_trim(dom, a)
    b = up_decided_trim(dom, b)
    while b:
        _, r = up_divmod_field(dom, a, b)
        a, b = b, up_decided_trim(dom, r)
    if not a:
        return ()
    return up_scale(dom, a, dom.invert(a[-1]))


def up_xgcd(dom, a, b):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic."""
    a0 = up_decided_trim(dom, a)
    b0 = up_decided_trim(dom, b)
    r0, r1 = a0, b0
    s0, s1 = (dom.one,), ()
    t0, t1 = (), (dom.one,)
    while r1:
        q, r = up_divmod_field(dom, r0, r1)
        r0, r1 = r1, up_decided_trim(dom, r)
        s0, s1 = s1, up_sub(dom, s0, up_mul(dom, q, s1))
        t0, t1 = t1, up_sub(dom, t0, up_mul(dom, q, t1))
    if not r0:
        return (), (), ()
    inv = dom.invert(r0[-1])
    return (
        up_scale(dom, r0, inv),
        up_scale(dom, s0, inv),
        up_scale(dom, t0, inv),
    )


def up_eval(dom, cs, x):
    acc = dom.zero
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def up_deriv(cs):
    return up_trim(tuple(c * k for k, c in enumerate(cs) if k))


def up_from_fractions(dom, fracs):
    return up_trim(tuple(dom.from_fraction(f) for f in fracs))


# ---------------------------------------------------------------------------
# sparse multivariate polynomials
# ---------------------------------------------------------------------------


class MultiPoly:
    """Sparse multivariate polynomial: exponent vector -> nonzero coefficient.

    The variable tuple is kept sorted in the canonical order, so two equal
    polynomials always have identical internal form.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: dict):
        vs = tuple(variables)
        assert list(vs) == sorted(vs, key=_var_key), f"unsorted vars {vs}"
        self.vars = vs
        self.terms = {e: c for e, c in terms.items() if c}
        for e in self.terms:
            assert len(e) == len(vs)

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c, variables=()):
        vs = tuple(sorted(variables, key=_var_key))
        if not c:
            return cls(vs, {})
        return cls(vs, {(0,) * len(vs): c})

    @classmethod
    def rational(cls, value):
        return cls.constant(Fraction(value))

    @classmethod
    def variable(cls, name):
        return cls((name,), {(1,): Fraction(1)})

    @classmethod
    def zero(cls):
        return cls((), {})

    @classmethod
    def one(cls):
        return cls((), {(): Fraction(1)})

    # -- structure ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(k == 0 for k in e) for e in self.terms)

    def constant_value(self):
        """The constant coefficient (the polynomial need not be constant)."""
        zero_exp = (0,) * len(self.vars)
        return self.terms.get(zero_exp, Fraction(0))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var):
        if var not in self.vars or not self.terms:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def uses(self, var):
        if var not in self.vars:
            return False
        i = self.vars.index(var)
        return any(e[i] for e in self.terms)

    def _project(self, variables):
        """Reinterpret over a (sorted) superset of self.vars."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        pos = [variables.index(v) for v in self.vars]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for p, k in zip(pos, e):
                ne[p] = k
            terms[tuple(ne)] = c
        return MultiPoly(variables, terms)

    def _aligned(self, other):
        vs = tuple(sorted(set(self.vars) | set(other.vars), key=_var_key))
        return self._project(vs), other._project(vs), vs

    # -- ring operations ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(Fraction(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, vs = self._aligned(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            cur = terms.get(e)
            terms[e] = c if cur is None else cur + c
        return MultiPoly(vs, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, vs = self._aligned(other)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                c = c1 * c2
                cur = terms.get(e)
                terms[e] = c if cur is None else cur + c
        return MultiPoly(vs, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        if not c:
            return MultiPoly(self.vars, {})
        return MultiPoly(self.vars, {e: co * c for e, co in self.terms.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, _ = self._aligned(other)
        return a.terms == b.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    # -- calculus / substitution ---------------------------------------

    def derivative(self, var):
        if var not in self.vars:
            return MultiPoly(self.vars, {})
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
            nc = c * e[i]
            cur = terms.get(ne)
            terms[ne] = nc if cur is None else cur + nc
        return MultiPoly(self.vars, terms)

    def substitute(self, bindings: dict):
        """Exact composition; bindings map variable names to MultiPolys."""
        if not bindings:
            return self
        # powers cache per bound variable
        pow_cache = {v: {0: MultiPoly.one()} for v in bindings}

        def power(v, k):
            cache = pow_cache[v]
            if k not in cache:
                cache[k] = power(v, k - 1) * bindings[v]
            return cache[k]

        result = MultiPoly(self.vars, {})
        kept = [
            (i, v) for i, v in enumerate(self.vars) if v not in bindings
        ]
        kept_vars = tuple(v for _, v in kept)
        for e, c in self.terms.items():
            ke = tuple(e[i] for i, _ in kept)
            term = MultiPoly(kept_vars, {ke: c})
            for i, v in enumerate(self.vars):
                if v in bindings and e[i]:
                    term = term * power(v, e[i])
            result = result + term
        return result

    def degree_in_vars(self, variables):
        """Total degree counting only the listed variables; -1 for zero."""
        if not self.terms:
            return -1
        idx = [i for i, v in enumerate(self.vars) if v in variables]
        return max(sum(e[i] for i in idx) for e in self.terms)

    def homogenize(self, d, zvar="z", geom_vars=("x", "y")):
        """Pad every term with zvar up to degree d in the geometric variables.

        Variables outside ``geom_vars`` (such as the pencil parameter t) are
        treated as coefficients and do not count toward the degree.
        """
        deg = self.degree_in_vars(geom_vars)
        if d < deg:
            raise DegreeTooSmall(f"degree {d} < degree {deg} in {geom_vars}")
        vs = tuple(sorted(set(self.vars) | {zvar}, key=_var_key))
        zi = vs.index(zvar)
        geom = [i for i, v in enumerate(vs) if v in geom_vars]
        base = self._project(vs)
        terms = {}
        for e, c in base.terms.items():
            pad = d - sum(e[i] for i in geom)
            ne = e[:zi] + (e[zi] + pad,) + e[zi + 1 :]
            terms[ne] = c
        return MultiPoly(vs, terms)

    def map_coeffs(self, fn: Callable):
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    def convert(self, dom):
        """Embed a Q-coefficient polynomial into another coefficient domain."""
        return self.map_coeffs(lambda c: dom.from_fraction(c))

    def evaluate(self, assign: dict, dom=QQ):
        """Full exact evaluation; every variable must be assigned."""
        acc = dom.zero
        for e, c in self.terms.items():
            term = c if not isinstance(c, Fraction) else dom.from_fraction(c)
            for v, k in zip(self.vars, e):
                if k:
                    term = term * assign[v] ** k
            acc = acc + term
        return acc

    def eval_complex(self, assign: dict) -> complex:
        acc = 0j
        for e, c in self.terms.items():
            term = complex(c)
            for v, k in zip(self.vars, e):
                if k:
                    term *= assign[v] ** k
            acc += term
        return acc

    # -- univariate views ----------------------------------------------

    def drop_var(self, var):
        """Remove a variable that does not occur."""
        if var not in self.vars:
            return self
        i = self.vars.index(var)
        assert all(e[i] == 0 for e in self.terms)
        vs = self.vars[:i] + self.vars[i + 1 :]
        return MultiPoly(vs, {e[:i] + e[i + 1 :]: c for e, c in self.terms.items()})

    def coeff_of(self, var, k):
        """Coefficient of var**k, as a polynomial in the remaining variables."""
        if var not in self.vars:
            return self if k == 0 else MultiPoly(self.vars, {})
        i = self.vars.index(var)
        vs = self.vars[:i] + self.vars[i + 1 :]
        terms = {
            e[:i] + e[i + 1 :]: c for e, c in self.terms.items() if e[i] == k
        }
        return MultiPoly(vs, terms)

    def as_univar(self, var):
        """Dense coefficient list (ascending) in var, over the remaining ring."""
        d = self.degree_in(var)
        if d < 0:
            return []
        return [self.coeff_of(var, k) for k in range(d + 1)]

    @staticmethod
    def from_univar(coeffs, var):
        acc = MultiPoly.zero()
        v = MultiPoly.variable(var)
        for k, c in enumerate(coeffs):
            if isinstance(c, MultiPoly):
                if not c.is_zero():
                    acc = acc + c * v**k
            elif c:
                acc = acc + v**k * Fraction(c)
        return acc

    def leading_coeff_in(self, var):
        return self.coeff_of(var, self.degree_in(var))

    def univar_fractions(self, var):
        """Fraction coefficient list for a genuinely univariate polynomial."""
        out = []
        for c in self.as_univar(var):
            assert c.is_constant(), "polynomial is not univariate"
            out.append(c.constant_value())
        return up_trim(tuple(out))

    @staticmethod
    def from_fraction_list(coeffs, var):
        return MultiPoly.from_univar([Fraction(c) for c in coeffs], var)

    # -- printing -------------------------------------------------------

    def _sorted_terms(self):
        # graded lex: higher total degree first, then lex on the exponents
        return sorted(
            self.terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-k for k in ec[0]))
        )

    def to_str(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self._sorted_terms():
            mon = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.vars, e)
                if k
            )
            if isinstance(c, Fraction):
                if mon:
                    if c == 1:
                        body = mon
                    elif c == -1:
                        body = f"-{mon}"
                    else:
                        body = f"{c}*{mon}"
                else:
                    body = str(c)
            else:
                body = f"({c!r})" + (f"*{mon}" if mon else "")
            if not parts:
                parts.append(body)
            elif body.startswith("-"):
                parts.append(" - " + body[1:])
            else:
                parts.append(" + " + body)
        return "".join(parts)

    __str__ = to_str

    def __repr__(self):
        return f"MultiPoly({self.to_str()})"


# ---------------------------------------------------------------------------
# exact division and rational-coefficient utilities
# ---------------------------------------------------------------------------


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact polynomial division p / q; raises ArithmeticError if not exact."""
    if q.is_zero():
        raise DivisionByZero("exact division by zero polynomial")
    if q.is_constant():
        return p.scale(1 / q.constant_value())
    var = next(v for v in q.vars if q.uses(v))
    dq = q.degree_in(var)
    lcq = q.coeff_of(var, dq)
    rem = p
    quot = MultiPoly.zero()
    xv = MultiPoly.variable(var)
    while not rem.is_zero():
        dr = rem.degree_in(var)
        if dr < dq:
            raise ArithmeticError("division not exact")
        c = exact_div(rem.coeff_of(var, dr), lcq)
        t = c * xv ** (dr - dq)
        quot = quot + t
        rem = rem - t * q
        if not rem.is_zero() and rem.degree_in(var) == dr and rem.coeff_of(var, dr) != MultiPoly.zero():
            raise ArithmeticError("division not exact")
    return quot


def rational_content(p: MultiPoly) -> Fraction:
    """Positive rational c with p/c integer-coefficient and content 1."""
    if p.is_zero():
        return Fraction(1)
    from math import gcd, lcm

    nums = [abs(c.numerator) for c in p.terms.values()]
    dens = [c.denominator for c in p.terms.values()]
    g = 0
    for n in nums:
        g = gcd(g, n)
    l = 1
    for d in dens:
        l = lcm(l, d)
    return Fraction(g, l)


def unit_normalize(p: MultiPoly) -> MultiPoly:
    """Canonical associate: integer coprime coefficients, leading term positive."""
    if p.is_zero():
        return p
    q = p.scale(1 / rational_content(p))
    lead = q._sorted_terms()[0][1]
    if lead < 0:
        q = -q
    return q
