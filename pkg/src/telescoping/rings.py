"""Exact arithmetic tower: rationals, univariate polynomials, fraction fields.

The tower used throughout the package is

    Q  -->  Q[t]  -->  K = Q(t)  -->  K[x]  -->  K(x)

with one generic dense polynomial type (`UniPoly`) and one generic fraction
type (`RatFunc`), both parametrized by the coefficient field.  Rational
constants are plain `fractions.Fraction` objects; everything above them is
built here.

Conventions:
  * polynomials are dense coefficient tuples, lowest degree first, with a
    nonzero leading coefficient; the zero polynomial is the empty tuple and
    has degree -1 (a sentinel, not a real degree);
  * fractions are always kept in canonical form: numerator and denominator
    coprime, denominator monic;
  * elements never mutate after construction, so they can be shared freely.
"""

from fractions import Fraction


class RationalField:
    """The field of rational numbers, with `Fraction` as element type."""

    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def of(self, v):
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        raise TypeError("cannot coerce %r into Q" % (v,))

    def is_zero(self, v):
        return v == 0

    def __repr__(self):
        return "Q"


QQ = RationalField()


class PolyRing:
    """Univariate polynomial ring over an abstract field, tagged by variable."""

    def __init__(self, field, var):
        self.field = field
        self.var = var
        self.zero = UniPoly(self, ())
        self.one = UniPoly(self, (field.one,))
        self.gen = UniPoly(self, (field.zero, field.one))

    def poly(self, coeffs):
        """Build a polynomial from an iterable of coefficients (low to high)."""
        f = self.field
        return UniPoly(self, tuple(c if _is_elem(f, c) else f.of(c) for c in coeffs))

    def of(self, v):
        """Coerce an integer, field element or lower-tower value into this ring."""
        if isinstance(v, UniPoly) and v.ring is self:
            return v
        if _is_elem(self.field, v):
            return UniPoly(self, (v,))
        return UniPoly(self, (self.field.of(v),))

    def is_zero(self, p):
        return p.is_zero()

    def __repr__(self):
        return "%r[%s]" % (self.field, self.var)


def _is_elem(field, v):
    """True when v is literally an element of the given field."""
    if field is QQ:
        return isinstance(v, Fraction)
    if isinstance(field, FracField):
        return isinstance(v, RatFunc) and v.num.ring is field.ring
    return False


class UniPoly:
    """Dense univariate polynomial over an abstract field.

    Invariant: the last stored coefficient is nonzero; the zero polynomial
    stores no coefficients and reports degree -1.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        n = len(coeffs)
        while n > 0 and ring.field.is_zero(coeffs[n - 1]):
            n -= 1
        self.ring = ring
        self.coeffs = tuple(coeffs[:n])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        """Leading coefficient (field zero for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else self.ring.field.zero

    def constant_coeff(self):
        return self.coeffs[0] if self.coeffs else self.ring.field.zero

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.field.zero

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.ring.field.one

    def _coerce(self, other):
        if isinstance(other, UniPoly) and other.ring is self.ring:
            return other
        if isinstance(other, RatFunc) and other.num.ring is self.ring:
            return None  # defer to RatFunc's reflected operator
        try:
            return self.ring.of(other)
        except TypeError:
            return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.ring.var, self.coeffs))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return self.ring.zero
        zero = self.ring.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == zero:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return UniPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < o.degree:
            return self.ring.zero, self
        lc_inv = _field_inv(self.ring.field, o.lc())
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        quot = [self.ring.field.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + o.degree]
            if not self.ring.field.is_zero(c):
                q = c * lc_inv
                quot[k] = q
                for i, oc in enumerate(o.coeffs):
                    rem[k + i] = rem[k + i] - q * oc
        return UniPoly(self.ring, quot), UniPoly(self.ring, rem[: o.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        """Division known to be exact; raises ValueError on a remainder."""
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("exact division has a remainder")
        return q

    def monic(self):
        if self.is_zero() or self.ring.field.is_zero(self.lc() - self.ring.field.one):
            return self
        inv = _field_inv(self.ring.field, self.lc())
        return UniPoly(self.ring, tuple(c * inv for c in self.coeffs))

    def deriv(self):
        """Derivative with respect to this ring's own variable."""
        f = self.ring.field
        return UniPoly(self.ring, tuple(f.of(i) * c for i, c in enumerate(self.coeffs) if i > 0))

    def map_coeffs(self, fn):
        """Apply `fn` to every coefficient (used for coefficient derivations)."""
        return UniPoly(self.ring, tuple(fn(c) for c in self.coeffs))

    def shift_up(self, k):
        """Multiply by var**k."""
        if self.is_zero() or k == 0:
            return self if k >= 0 else self
        return UniPoly(self.ring, (self.ring.field.zero,) * k + self.coeffs)

    def __call__(self, point):
        """Horner evaluation; `point` may live in the field or any ring
        supporting mixed arithmetic with the coefficients."""
        if not self.coeffs:
            return point * 0 if not isinstance(point, int) else self.ring.field.zero
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * point + c
        return acc

    def valuation(self):
        """Order of vanishing at 0 (number of leading zero coefficients)."""
        if self.is_zero():
            raise ValueError("valuation of the zero polynomial")
        k = 0
        while self.ring.field.is_zero(self.coeffs[k]):
            k += 1
        return k

    def __repr__(self):
        return "UniPoly(%s, %s)" % (self.ring.var, list(self.coeffs))


def _field_inv(field, c):
    if isinstance(c, Fraction):
        return 1 / c
    return c.inverse()


def ext_gcd(p, q):
    """Extended gcd of two polynomials: returns (g, s, t) with s*p + t*q = g.

    `g` is monic.  Raises ValueError when both inputs are zero.
    """
    ring = p.ring
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = p, q
    s0, s1 = ring.one, ring.zero
    t0, t1 = ring.zero, ring.one
    while not r1.is_zero():
        quot, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    if not r0.is_zero():
        inv = _field_inv(ring.field, r0.lc())
        r0, s0, t0 = inv * r0, inv * s0, inv * t0
    return r0, s0, t0


def poly_gcd(p, q):
    if p.is_zero() and q.is_zero():
        return p.ring.zero
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(p, q):
    if p.is_zero() or q.is_zero():
        return p.ring.zero
    g = poly_gcd(p, q)
    return ((p * q).exact_div(g)).monic()


def invert_mod(p, modulus):
    """Inverse of p modulo `modulus`; raises ZeroDivisionError if not coprime."""
    g, s, _ = ext_gcd(p, modulus)
    if g.degree != 0:
        raise ZeroDivisionError("element not invertible modulo %r" % (modulus,))
    return s % modulus


def squarefree_factorization(p):
    """Yun decomposition: list of (monic squarefree factor, multiplicity).

    Factors are pairwise coprime and listed in order of increasing
    multiplicity.  The leading coefficient of `p` is not part of the output;
    `p = lc(p) * prod(f**m)`.  Raises ValueError on zero input.
    """
    if p.is_zero():
        raise ValueError("squarefree factorization of zero")
    p = p.monic()
    if p.degree == 0:
        return []
    out = []
    dp = p.deriv()
    g = poly_gcd(p, dp)
    c = p.exact_div(g)
    d = dp.exact_div(g) - c.deriv()
    mult = 1
    while c.degree > 0:
        f = poly_gcd(c, d)
        if f.degree > 0:
            out.append((f, mult))
        c2 = c.exact_div(f)
        d = d.exact_div(f) - c2.deriv()
        c = c2
        mult += 1
    return out


def squarefree_part(p):
    prod = p.ring.one
    for f, _ in squarefree_factorization(p):
        prod = prod * f
    return prod


def resultant(p, q):
    """Resultant of two polynomials over a field, by the Euclidean scheme."""
    field = p.ring.field
    if p.is_zero() or q.is_zero():
        return field.zero
    sign = field.one
    acc = field.one
    a, b = p, q
    while b.degree > 0:
        r = a % b
        if (a.degree * b.degree) % 2 == 1:
            sign = -sign
        if r.is_zero():
            return field.zero
        acc = acc * _field_pow(field, b.lc(), a.degree - r.degree)
        a, b = b, r
    # b is now a nonzero constant
    return sign * acc * _field_pow(field, b.lc(), a.degree)


def _field_pow(field, c, n):
    out = field.one
    for _ in range(n):
        out = out * c
    return out


class FracField:
    """Fraction field of a PolyRing; elements are canonical `RatFunc` pairs."""

    def __init__(self, ring):
        self.ring = ring
        self.zero = RatFunc(ring.zero, ring.one, _normal=True)
        self.one = RatFunc(ring.one, ring.one, _normal=True)
        self.gen = RatFunc(ring.gen, ring.one, _normal=True)

    @property
    def var(self):
        return self.ring.var

    def of(self, v):
        if isinstance(v, RatFunc) and v.num.ring is self.ring:
            return v
        if isinstance(v, UniPoly) and v.ring is self.ring:
            return RatFunc(v, self.ring.one, _normal=True)
        return RatFunc(self.ring.of(v), self.ring.one, _normal=True)

    def is_zero(self, v):
        return v.num.is_zero()

    def __repr__(self):
        return "%r(%s)" % (self.ring.field, self.ring.var)


class RatFunc:
    """Rational function in canonical form: coprime parts, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den, _normal=False):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normal:
            if num.is_zero():
                den = num.ring.one
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                if not den.ring.field.is_zero(den.lc() - den.ring.field.one):
                    inv = _field_inv(den.ring.field, den.lc())
                    num = inv * num
                    den = inv * den
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.degree == 0

    def as_poly(self):
        if not self.is_polynomial():
            raise ValueError("not a polynomial: %r" % (self,))
        return self.num

    def _coerce(self, other):
        if isinstance(other, RatFunc) and other.num.ring is self.num.ring:
            return other
        try:
            return RatFunc(self.num.ring.of(other), self.num.ring.one, _normal=True)
        except TypeError:
            return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normal=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def deriv(self):
        """Derivative with respect to the fraction field's own variable."""
        num = self.num.deriv() * self.den - self.num * self.den.deriv()
        return RatFunc(num, self.den * self.den)

    def map_coeffs_deriv(self, fn):
        """Quotient rule for a derivation acting on the coefficients only."""
        dn = self.num.map_coeffs(fn)
        dd = self.den.map_coeffs(fn)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def order_at_infinity(self):
        """deg(den) - deg(num); by convention +inf (None) for zero."""
        if self.is_zero():
            return None
        return self.den.degree - self.num.degree

    def __call__(self, point):
        den_val = self.den(point)
        if isinstance(den_val, (Fraction, RatFunc)):
            num_val = self.num(point)
            if isinstance(den_val, Fraction):
                if den_val == 0:
                    raise ZeroDivisionError("denominator vanishes at the point")
                return num_val / den_val
            return num_val / den_val
        raise TypeError("unsupported evaluation point")

    def __repr__(self):
        return "RatFunc(%r, %r)" % (self.num, self.den)


# The concrete tower used by the rest of the package.

T_RING = PolyRing(QQ, "t")
K = FracField(T_RING)          # K = Q(t), the telescoper coefficient field
X_RING = PolyRing(K, "x")      # K[x]
KX = FracField(X_RING)         # K(x)


def rat(a, b=1):
    """Rational constant as an element of K = Q(t)."""
    return K.of(Fraction(a, b))


def tpoly(*coeffs):
    """Polynomial in t over Q, low degree first, as an element of K."""
    return K.of(T_RING.poly([Fraction(c) for c in coeffs]))


def xpoly(*coeffs):
    """Polynomial in x over K; coefficients may be ints or K elements."""
    return X_RING.poly([K.of(c) if isinstance(c, int) else c for c in coeffs])
