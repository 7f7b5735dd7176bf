"""The algebraic function field A = K(x)[y]/<m> and its two derivations.

`FunctionField` wraps a squarefree bivariate defining polynomial m(x, y) with
coefficients in K = Q(t) and provides element arithmetic, the derivation in x
(where y' is forced by differentiating m(x, y) = 0) and the derivation in t
(acting on coefficients, with d/dt y forced the same way).  Elements are
coordinate vectors over the power basis 1, y, ..., y^(n-1).

Also here: the change of variables x -> a + 1/x that moves a chosen regular
point to infinity, and the search for such a point.
"""

from fractions import Fraction

from .rings import (K, KX, X_RING, PolyRing, RatFunc, UniPoly, ext_gcd,
                    poly_gcd, poly_lcm, resultant)


class ReducibleMinimalPolynomialError(ArithmeticError):
    """Raised when a gcd with m uncovers a nontrivial factor of m."""

    def __init__(self, factor):
        super().__init__("defining polynomial is reducible; found factor of "
                         "y-degree %d" % factor.degree)
        self.factor = factor


class NotRegularPointError(ValueError):
    """Raised when a substitution point fails one of the regularity tests."""

    def __init__(self, point, failed_test):
        super().__init__("x = %s is not a regular point: %s" % (point, failed_test))
        self.point = point
        self.failed_test = failed_test


class FunctionField:
    """A = K(x)[y]/<m> for a squarefree m with deg_y(m) = n >= 1."""

    def __init__(self, min_poly):
        if min_poly.degree < 1:
            raise ValueError("defining polynomial must involve y")
        self.y_ring = min_poly.ring           # K(x)[y]
        self.kx = KX
        self.min_poly = min_poly
        self.n = min_poly.degree
        my = min_poly.deriv()
        if ext_gcd(min_poly, my)[0].degree != 0:
            raise ValueError("defining polynomial is not squarefree in y")
        self._min_poly_dy = my
        self._y_deriv_x = None
        self._y_deriv_t = None

    @classmethod
    def from_y_coeffs(cls, coeffs):
        """Build from a list of K(x) coefficients c0 + c1*y + ... (low first)."""
        ring = PolyRing(KX, "y")
        return cls(ring.poly([KX.of(c) for c in coeffs]))

    # -- element constructors ------------------------------------------------

    def element(self, coords):
        coords = [KX.of(c) for c in coords]
        if len(coords) > self.n:
            raise ValueError("too many coordinates")
        coords += [KX.zero] * (self.n - len(coords))
        return AlgElem(self, tuple(coords))

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([KX.one])

    def gen(self):
        """The class of y (reduced if n == 1)."""
        if self.n == 1:
            c0 = self.min_poly.coeff(0)
            c1 = self.min_poly.coeff(1)
            return self.element([-c0 / c1])
        return self.element([KX.zero, KX.one])

    def from_y_poly(self, poly):
        """Reduce a K(x)[y] polynomial modulo m and wrap it as an element."""
        if poly.ring is not self.y_ring:
            raise TypeError("polynomial from a different y-ring")
        rem = poly % self.min_poly
        coords = [rem.coeff(i) for i in range(self.n)]
        return AlgElem(self, tuple(coords))

    def scalar(self, c):
        return self.element([KX.of(c)])

    # -- the forced derivatives of y ------------------------------------------

    def y_deriv_x(self):
        """dy/dx = -m_x / m_y as an element of A."""
        if self._y_deriv_x is None:
            mx = self.min_poly.map_coeffs(lambda c: c.deriv())
            self._y_deriv_x = -(self.from_y_poly(mx) * self._invert_y_poly(self._min_poly_dy))
        return self._y_deriv_x

    def y_deriv_t(self):
        """dy/dt = -m_t / m_y as an element of A."""
        if self._y_deriv_t is None:
            mt = self.min_poly.map_coeffs(_coeff_deriv_t)
            self._y_deriv_t = -(self.from_y_poly(mt) * self._invert_y_poly(self._min_poly_dy))
        return self._y_deriv_t

    def _invert_y_poly(self, poly):
        g, s, _ = ext_gcd(poly % self.min_poly, self.min_poly)
        if g.degree != 0:
            raise ReducibleMinimalPolynomialError(g)
        return self.from_y_poly(s)

    # -- misc ------------------------------------------------------------------

    def lc_y(self):
        return self.min_poly.lc()

    def discriminant_resultant(self):
        """res_y(m, m_y) as an element of K(x); zero iff m is not squarefree."""
        return resultant(self.min_poly, self._min_poly_dy)

    def __repr__(self):
        return "FunctionField(n=%d)" % self.n


def _coeff_deriv_t(c):
    # d/dt on an element of K(x): quotient rule in x, coefficient rule in t
    return c.map_coeffs_deriv(lambda k: k.deriv())


class AlgElem:
    """Element of A as a coordinate vector over the power basis in y."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def _check(self, other):
        if not isinstance(other, AlgElem):
            raise TypeError("expected an algebraic element")
        if other.field is not self.field:
            raise ValueError("elements of different function fields")

    def __eq__(self, other):
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.field is other.field and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        self._check(other)
        return AlgElem(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return AlgElem(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgElem(self.field, tuple(-a for a in self.coords))

    def scale(self, c):
        """Multiply by a K(x) scalar (or anything KX can coerce)."""
        c = KX.of(c)
        return AlgElem(self.field, tuple(c * a for a in self.coords))

    def __mul__(self, other):
        self._check(other)
        return self.field.from_y_poly(self.as_y_poly() * other.as_y_poly())

    def inverse(self):
        """Multiplicative inverse; detects reducibility of m on the way."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero element")
        F = self.field
        g, s, _ = ext_gcd(self.as_y_poly(), F.min_poly)
        if g.degree != 0:
            raise ReducibleMinimalPolynomialError(g)
        return F.from_y_poly(s)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def as_y_poly(self):
        return self.field.y_ring.poly(list(self.coords))

    def deriv_x(self):
        """Derivative with respect to x, using the forced y'."""
        F = self.field
        part = F.element([c.deriv() for c in self.coords])
        dy_part = F.zero()
        if F.n > 1:
            dp = self.as_y_poly().deriv()
            dy_part = F.from_y_poly(dp) * F.y_deriv_x()
        return part + dy_part

    def deriv_t(self):
        """Derivative with respect to t, using the forced dy/dt."""
        F = self.field
        part = F.element([_coeff_deriv_t(c) for c in self.coords])
        dy_part = F.zero()
        if F.n > 1:
            dp = self.as_y_poly().deriv()
            dy_part = F.from_y_poly(dp) * F.y_deriv_t()
        return part + dy_part

    def denominator_lcm(self):
        """Monic lcm of the coordinate denominators, in K[x]."""
        den = X_RING.one
        for c in self.coords:
            den = poly_lcm(den, c.den)
        return den

    def __repr__(self):
        return "AlgElem(%r)" % (list(self.coords),)


class Substitution:
    """Record of one change of variables x -> a + 1/x."""

    __slots__ = ("point", "source", "target")

    def __init__(self, point, source, target):
        self.point = point
        self.source = source
        self.target = target

    def pull_back(self, elem):
        """Map an element of the target field back via x -> 1/(x - a)."""
        if elem.field is not self.target:
            raise ValueError("element does not live in the substituted field")
        a = self.point
        back = RatFunc(X_RING.one, X_RING.poly([-K.of(Fraction(a)), K.one]))  # 1/(x - a)
        coords = [_compose_ratfunc(c, back) for c in elem.coords]
        return self.source.element(coords)


def _compose_ratfunc(rf, val):
    """Evaluate a K(x) element at another K(x) element (Horner twice)."""
    num = _compose_poly(rf.num, val)
    den = _compose_poly(rf.den, val)
    return num / den


def _compose_poly(poly, val):
    acc = KX.zero
    for c in reversed(poly.coeffs):
        acc = acc * val + KX.of(c)
    return acc


def _regularity_failure(field, f, a):
    """Name of the failed regularity test at x = a, or None if regular."""
    point = K.of(Fraction(a) if isinstance(a, (int, Fraction)) else a)
    lcv = _eval_kx_at(field.lc_y(), point)
    if lcv is None or lcv.is_zero():
        return "leading coefficient of m vanishes at the point"
    disc = field.discriminant_resultant()
    dv = _eval_kx_at(disc, point)
    if dv is None:
        return "discriminant has a pole at the point"
    if dv.is_zero():
        return "discriminant of m vanishes at the point"
    if f is not None:
        for c in f.coords:
            if _eval_kpoly_at(c.den, point).is_zero():
                return "a coordinate denominator of f vanishes at the point"
    return None


def _eval_kx_at(rf, point):
    den = _eval_kpoly_at(rf.den, point)
    if den.is_zero():
        return None
    return _eval_kpoly_at(rf.num, point) / den


def _eval_kpoly_at(poly, point):
    acc = K.zero
    for c in reversed(poly.coeffs):
        acc = acc * point + c
    return acc


def find_regular_point(field, f=None):
    """Smallest |a| among 0, 1, -1, 2, -2, ... passing the regularity tests."""
    k = 0
    while True:
        for a in ([0] if k == 0 else [k, -k]):
            if _regularity_failure(field, f, a) is None:
                return a
        k += 1


def move_regular_point_to_infinity(field, f, a, check=True):
    """Apply x -> a + 1/x, returning (new field, new integrand, record).

    The new integrand is f(a + 1/x) * (-1/x^2), i.e. the chain-rule factor is
    already folded in, so integrals (and telescopers) are preserved.  With
    `check` the point must pass all regularity tests; the substitution itself
    is a field isomorphism and works for any point where m keeps its y-degree.
    """
    if check:
        failure = _regularity_failure(field, f, a)
        if failure is not None:
            raise NotRegularPointError(a, failure)
    point = K.of(Fraction(a) if isinstance(a, (int, Fraction)) else a)
    x = X_RING.gen
    val = KX.of(X_RING.poly([point])) + KX.of(x).inverse()  # a + 1/x

    # substitute into m and clear x-denominators
    m = field.min_poly
    new_coeffs = [_compose_ratfunc(c, val) for c in m.coeffs]
    den = X_RING.one
    for c in new_coeffs:
        den = poly_lcm(den, c.den)
    cleared = [KX.of((c * den).as_poly()) for c in new_coeffs]
    # strip common x-content so the defining polynomial stays primitive-ish
    content = X_RING.zero
    for c in cleared:
        content = poly_gcd(content, c.as_poly()) if not content.is_zero() else c.as_poly()
    if content.degree > 0:
        cleared = [KX.of(c.as_poly().exact_div(content)) for c in cleared]
    new_m = PolyRing(KX, "y").poly(cleared)
    if new_m.degree != field.n:
        raise NotRegularPointError(a, "substitution drops the y-degree of m")
    new_field = FunctionField(new_m)

    chain = -(KX.of(x).inverse() ** 2)  # -1/x^2
    new_coords = [chain * _compose_ratfunc(c, val) for c in f.coords]
    new_f = new_field.element(new_coords)
    return new_field, new_f, Substitution(a, field, new_field)
