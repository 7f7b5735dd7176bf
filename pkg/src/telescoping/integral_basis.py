"""Integral bases of A = K(x)[y]/<m> and their derivation data.

The global integral basis is computed by order enlargement: starting from the
monic power basis, for every squarefree factor v of the discriminant with
multiplicity at least two we alternately compute the radical of v*O (via the
trace form, valid in characteristic zero) and the multiplier ring of that
radical, until the order is maximal at v.  All linear algebra modulo v is done
with dynamic evaluation: when a zero divisor shows up, the modulus is split
along the discovered factor and the work is redone for each piece.

A local integral basis at infinity is obtained by substituting x -> 1/x and
running the same enlargement localized at x = 0 only.  Normalization at
infinity follows the classical scheme: measure each basis element's pole order
at infinity against the local basis, and as long as the matrix of leading
values is singular, replace one element by a polynomial combination that
lowers its pole order.
"""

from .linalg import Matrix
from .rings import (K, KX, X_RING, RatFunc, UniPoly, ext_gcd, poly_gcd,
                    poly_lcm, resultant, squarefree_factorization)
from .function_field import AlgElem, FunctionField, _compose_ratfunc


class BasisVerificationError(ValueError):
    """A basis failed one of the verification predicates (named in args)."""

    def __init__(self, predicate, detail=""):
        msg = "basis verification failed: %s" % predicate
        if detail:
            msg += " (%s)" % detail
        super().__init__(msg)
        self.predicate = predicate


class SplitModulusError(ArithmeticError):
    """A zero divisor was hit while working modulo a squarefree modulus."""

    def __init__(self, factor):
        super().__init__("modulus splits off a factor of degree %d" % factor.degree)
        self.factor = factor


INFINITY = "infinity"


class BasisData:
    """A K(x)-basis of A given by its change-of-basis matrix from the power basis.

    Row i of `mat` holds the coordinates of the basis element w_i over
    1, y, ..., y^(n-1).  Flags are only set after the corresponding
    construction or verification has actually been performed.
    """

    def __init__(self, field, mat, globally_integral=False,
                 local_at_infinity=False, normal_at_infinity=False, tau=None):
        self.field = field
        self.mat = mat
        self.globally_integral = globally_integral
        self.local_at_infinity = local_at_infinity
        self.normal_at_infinity = normal_at_infinity
        self.tau = tau
        self._inv = None
        self._deriv_cache = {}
        self.elements = tuple(AlgElem(field, tuple(mat.row(i))) for i in range(field.n))

    @classmethod
    def standard(cls, field, **flags):
        return cls(field, Matrix.identity(KX, field.n), **flags)

    @property
    def n(self):
        return self.field.n

    def inv_mat(self):
        if self._inv is None:
            self._inv = self.mat.inverse()
        return self._inv

    def coords_of(self, f):
        """Coordinates of an element over this basis, as a tuple of K(x) values."""
        if f.field is not self.field:
            raise ValueError("element from a different function field")
        inv = self.inv_mat()
        out = []
        for j in range(self.n):
            acc = KX.zero
            for i in range(self.n):
                acc = acc + f.coords[i] * inv[i, j]
            out.append(acc)
        return tuple(out)

    def element_from_coords(self, coords):
        acc = self.field.zero()
        for c, w in zip(coords, self.elements):
            c = KX.of(c)
            if not c.is_zero():
                acc = acc + w.scale(c)
        return acc

    def witnesses(self):
        """Normality witnesses r_i = x^(-tau_i) (requires normalization)."""
        if self.tau is None:
            raise BasisVerificationError("normal-at-infinity", "no normality data")
        x = KX.of(X_RING.gen)
        return tuple(x.inverse() ** ti if ti else KX.one for ti in self.tau)

    def derivation_data(self, direction):
        if direction not in ("x", "t"):
            raise ValueError("direction must be 'x' or 't'")
        if direction not in self._deriv_cache:
            self._deriv_cache[direction] = _derivation_data(self, direction)
        return self._deriv_cache[direction]

    def __repr__(self):
        return "BasisData(n=%d, integral=%s, normal=%s)" % (
            self.n, self.globally_integral, self.normal_at_infinity)


class DerivationData:
    """Exact data (e, M) with e * W' = M * W and content gcd removed."""

    def __init__(self, e, rows, direction):
        self.e = e
        self.rows = rows  # list of lists of UniPoly in K[x]
        self.direction = direction

    def max_deg(self):
        return max((p.degree for row in self.rows for p in row), default=-1)

    def __repr__(self):
        return "DerivationData(d%s, deg e = %d)" % (self.direction, self.e.degree)


def _derivation_data(basis, direction):
    F = basis.field
    rows_kx = []
    for w in basis.elements:
        d = w.deriv_x() if direction == "x" else w.deriv_t()
        rows_kx.append(basis.coords_of(d))
    e = X_RING.one
    for row in rows_kx:
        for c in row:
            e = poly_lcm(e, c.den)
    rows = [[(c * KX.of(e)).as_poly() for c in row] for row in rows_kx]
    content = X_RING.zero
    for row in rows:
        for p in row:
            if not p.is_zero():
                content = p if content.is_zero() else poly_gcd(content, p)
    g = poly_gcd(e, content) if not content.is_zero() else X_RING.one
    if g.degree > 0:
        e = e.exact_div(g)
        rows = [[p.exact_div(g) for p in row] for row in rows]
    data = DerivationData(e, rows, direction)
    if direction == "t":
        dx = basis.derivation_data("x")
        quot, rem = divmod(dx.e, data.e)
        if not rem.is_zero():
            # guaranteed by commutation of the two derivations
            raise BasisVerificationError("t-derivation denominator divides e",
                                         "e_t does not divide e_x")
        if not quot.is_one():
            rows = [[p * quot for p in row] for row in data.rows]
            data = DerivationData(dx.e, rows, "t")
    return data


def derivation_data(basis, direction):
    """Public wrapper: (e, M) for d/dx, or (e, M~) rescaled onto e for d/dt."""
    return basis.derivation_data(direction)


# ---------------------------------------------------------------------------
# linear algebra modulo a squarefree modulus, with dynamic evaluation
# ---------------------------------------------------------------------------


def _inv_mod(p, v):
    g, s, _ = ext_gcd(p, v)
    if g.degree == 0:
        return s % v
    raise SplitModulusError(g)


def _nullspace_mod(rows, ncols, v):
    """Right kernel basis of a matrix over K[x]/(v); entries reduced mod v.

    Raises SplitModulusError when elimination hits a zero divisor that cannot
    be avoided by pivoting.
    """
    m = [[c % v for c in row] for row in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        unit_row = None
        proper = None
        for i in range(r, nrows):
            e = m[i][c]
            if e.is_zero():
                continue
            g = poly_gcd(e, v)
            if g.degree == 0:
                unit_row = i
                break
            proper = proper or g
        if unit_row is None:
            if proper is not None:
                raise SplitModulusError(proper)
            continue
        m[r], m[unit_row] = m[unit_row], m[r]
        inv = _inv_mod(m[r][c], v)
        m[r] = [(a * inv) % v for a in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                coef = m[i][c]
                m[i] = [(a - coef * b) % v for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [X_RING.zero] * ncols
        vec[fc] = X_RING.one
        for rr, pc in enumerate(pivots):
            vec[pc] = (-m[rr][fc]) % v
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# Hermite normal form over K[x]
# ---------------------------------------------------------------------------


def hnf_rows(rows, ncols):
    """Row-style Hermite normal form of a full-column-rank stack of rows.

    Returns `ncols` rows forming an upper triangular matrix with monic
    diagonal, off-diagonal entries reduced modulo the diagonal below them.
    """
    active = [list(r) for r in rows if any(not p.is_zero() for p in r)]
    out = []
    for col in range(ncols):
        cand = [r for r in active if not r[col].is_zero()]
        rest = [r for r in active if r[col].is_zero()]
        if not cand:
            raise ValueError("rank-deficient lattice in HNF")
        while len(cand) > 1:
            cand.sort(key=lambda r: r[col].degree)
            piv = cand[0]
            new_cand = [piv]
            for r in cand[1:]:
                q = r[col] // piv[col]
                reduced = [a - q * b for a, b in zip(r, piv)]
                if reduced[col].is_zero():
                    if any(not p.is_zero() for p in reduced):
                        rest.append(reduced)
                else:
                    new_cand.append(reduced)
            cand = new_cand
        piv = cand[0]
        inv = piv[col].lc().inverse()
        piv = [inv * a for a in piv]
        out.append(piv)
        active = rest
    # reduce above-diagonal entries for canonicity
    for i in range(ncols - 1):
        for j in range(i + 1, ncols):
            q = out[i][j] // out[j][j]
            if not q.is_zero():
                out[i] = [a - q * b for a, b in zip(out[i], out[j])]
    return out


# ---------------------------------------------------------------------------
# order enlargement
# ---------------------------------------------------------------------------


class _Order:
    """K[x]-order in the monic field F, with basis rows Lam/delta over y-powers."""

    def __init__(self, field, lam, delta):
        self.field = field
        self.lam = lam       # list of lists of UniPoly
        self.delta = delta   # UniPoly, monic
        n = field.n
        inv_delta = KX.of(delta).inverse()
        self.elements = [
            AlgElem(field, tuple(KX.of(lam[i][j]) * inv_delta for j in range(n)))
            for i in range(n)
        ]
        self._kx_mat = Matrix.from_rows(KX, [[KX.of(p) for p in row] for row in lam])
        self._kx_inv = None

    @classmethod
    def standard(cls, field):
        n = field.n
        lam = [[X_RING.one if i == j else X_RING.zero for j in range(n)] for i in range(n)]
        return cls(field, lam, X_RING.one)

    def coords_over(self, elem):
        """Coordinates of an element over this order's basis (K(x) entries)."""
        if self._kx_inv is None:
            self._kx_inv = self._kx_mat.inverse()
        n = self.field.n
        out = []
        for j in range(n):
            acc = KX.zero
            for i in range(n):
                acc = acc + elem.coords[i] * self._kx_inv[i, j]
            out.append(acc * KX.of(self.delta))
        return out

    def same_as(self, other):
        return self.delta == other.delta and self.lam == other.lam


def _power_traces(field, count):
    """Traces of y^k for k < count, via Newton's identities (m monic)."""
    m = field.min_poly
    n = field.n
    a = [m.coeff(i) for i in range(n)]  # a_0 .. a_{n-1}; lc = 1
    p = [KX.of(n)]
    for k in range(1, count):
        acc = KX.zero
        for i in range(1, min(k - 1, n) + 1):
            acc = acc + a[n - i] * p[k - i]
        if k <= n:
            acc = acc + KX.of(k) * a[n - k]
        p.append(-acc)
    return p


def _trace_of(field, traces, elem):
    acc = KX.zero
    for k, c in enumerate(elem.coords):
        if not c.is_zero():
            acc = acc + c * traces[k]
    return acc


def _trace_matrix(order):
    field = order.field
    n = field.n
    traces = _power_traces(field, 2 * n - 1)
    rows = []
    for i in range(n):
        row = []
        for j in range(i + 1):
            tr = _trace_of(field, traces, order.elements[i] * order.elements[j])
            row.append(tr.as_poly())
        rows.append(row)
    full = [[rows[max(i, j)][min(i, j)] for j in range(n)] for i in range(n)]
    return full


def _enlarge_once(order, v):
    """One radical/multiplier-ring round at v.  Returns a new order or None."""
    field = order.field
    n = field.n
    tmat = _trace_matrix(order)
    rad_kernel = _nullspace_mod(tmat, n, v)
    if not rad_kernel:
        return None
    # lattice of the radical of v*O, as rows over the order basis
    stack = [[v if i == j else X_RING.zero for j in range(n)] for i in range(n)]
    stack += [list(vec) for vec in rad_kernel]
    gamma_rows = hnf_rows(stack, n)
    gamma_elems = []
    for row in gamma_rows:
        acc = field.zero()
        for c, w in zip(row, order.elements):
            if not c.is_zero():
                acc = acc + w.scale(KX.of(c))
        gamma_elems.append(acc)
    gamma_mat = Matrix.from_rows(KX, [[KX.of(p) for p in row] for row in gamma_rows])
    gamma_inv = gamma_mat.inverse()
    # stack the maps z |-> z*gamma_i, written over the radical's basis
    big_rows = [[] for _ in range(n)]
    for gi in gamma_elems:
        mul_rows = []
        for w in order.elements:
            mul_rows.append(order.coords_over(w * gi))
        mul = Matrix.from_rows(KX, mul_rows)
        u = mul * gamma_inv
        for j in range(n):
            for jj in range(n):
                entry = u[j, jj]
                big_rows[j].append(entry.as_poly())
    # left kernel of [U_1 | ... | U_n] modulo v
    transposed = [[big_rows[i][c] for i in range(n)] for c in range(len(big_rows[0]))]
    kernel = _nullspace_mod(transposed, n, v)
    if not kernel:
        return None
    stack = [[v * p for p in row] for row in order.lam]
    for vec in kernel:
        row = []
        for j in range(n):
            acc = X_RING.zero
            for i in range(n):
                if not vec[i].is_zero():
                    acc = acc + vec[i] * order.lam[i][j]
            row.append(acc)
        stack.append(row)
    new_lam = hnf_rows(stack, n)
    new_delta = (v * order.delta).monic()
    content = X_RING.zero
    for row in new_lam:
        for p in row:
            if not p.is_zero():
                content = p if content.is_zero() else poly_gcd(content, p)
    g = poly_gcd(content, new_delta)
    if g.degree > 0:
        new_lam = [[p.exact_div(g) for p in row] for row in new_lam]
        new_delta = new_delta.exact_div(g)
    return _Order(order.field, new_lam, new_delta)


def _maximal_order(field, factors):
    """Enlarge the standard order of a monic field at each given modulus."""
    order = _Order.standard(field)
    work = list(factors)
    while work:
        v = work.pop()
        try:
            enlarged = _enlarge_once(order, v)
            while enlarged is not None:
                order = enlarged
                enlarged = _enlarge_once(order, v)
        except SplitModulusError as err:
            g = err.factor.monic()
            work.append(g)
            work.append(v.exact_div(g))
    return order


def _monicize(field):
    """Return (monic field, scale l) with y_monic = l * y, l in K[x]."""
    m = field.min_poly
    den = X_RING.one
    for c in m.coeffs:
        den = poly_lcm(den, c.den)
    coeffs = [(c * KX.of(den)).as_poly() for c in m.coeffs]
    n = m.degree
    lc = coeffs[n]
    if lc.degree == 0:
        inv = KX.of(lc).inverse()
        new_coeffs = [KX.of(c) * inv for c in coeffs]
        return FunctionField(field.y_ring.poly(new_coeffs)), X_RING.one
    new_coeffs = []
    for j, c in enumerate(coeffs):
        if j == n:
            new_coeffs.append(KX.one)
        else:
            new_coeffs.append(KX.of(c * lc ** (n - 1 - j)))
    return FunctionField(field.y_ring.poly(new_coeffs)), lc


def _discriminant_factors(field, min_mult=2):
    res = field.discriminant_resultant()
    poly = res.as_poly()
    if poly.degree <= 0:
        return []
    return [f for f, mult in squarefree_factorization(poly) if mult >= min_mult]


def compute_integral_basis(field):
    """Global integral basis of A, as BasisData over the power basis."""
    monic_field, scale = _monicize(field)
    factors = _discriminant_factors(monic_field)
    order = _maximal_order(monic_field, factors)
    mat = _unmonicize_rows(field, order, scale)
    basis = BasisData(field, mat, globally_integral=True)
    failure = integrality_check_failure(basis)
    if failure is not None:
        raise BasisVerificationError(failure, "computed basis failed its own check")
    return basis


def _unmonicize_rows(field, order, scale):
    n = field.n
    inv_delta = KX.of(order.delta).inverse()
    rows = []
    spow = [KX.one]
    for _ in range(n - 1):
        spow.append(spow[-1] * KX.of(scale))
    for i in range(n):
        rows.append([KX.of(order.lam[i][j]) * inv_delta * spow[j] for j in range(n)])
    return Matrix.from_rows(KX, rows)


def local_basis_at_infinity(field):
    """Local integral basis at infinity, via x -> 1/x and enlargement at 0."""
    x = KX.of(X_RING.gen)
    inv_x = x.inverse()
    m = field.min_poly
    subst = [_compose_ratfunc(c, inv_x) for c in m.coeffs]
    den = X_RING.one
    for c in subst:
        den = poly_lcm(den, c.den)
    cleared = [(c * KX.of(den)).as_poly() for c in subst]
    content = X_RING.zero
    for p in cleared:
        if not p.is_zero():
            content = p if content.is_zero() else poly_gcd(content, p)
    if content.degree > 0:
        cleared = [p.exact_div(content) if not p.is_zero() else p for p in cleared]
    far_field = FunctionField(field.y_ring.poly([KX.of(p) for p in cleared]))
    monic_far, scale = _monicize(far_field)
    order = _maximal_order(monic_far, [X_RING.gen])
    # map back: multiply column j by scale^j, then substitute x -> 1/x
    n = field.n
    inv_delta = KX.of(order.delta).inverse()
    rows = []
    spow = [KX.one]
    for _ in range(n - 1):
        spow.append(spow[-1] * KX.of(scale))
    for i in range(n):
        row = []
        for j in range(n):
            c = KX.of(order.lam[i][j]) * inv_delta * spow[j]
            row.append(_compose_ratfunc(c, inv_x))
        rows.append(row)
    basis = BasisData(field, Matrix.from_rows(KX, rows), local_at_infinity=True)
    failure = infinity_degree_check_failure(basis)
    if failure is not None:
        raise BasisVerificationError(failure, "local basis at infinity failed its check")
    return basis


def normalize_at_infinity(basis, basis_inf):
    """Make a global integral basis normal at infinity; also extracts tau.

    Returns a new BasisData that is globally integral, normal at infinity,
    with `tau` holding the pole orders (so the witnesses are x^(-tau_i)).
    """
    if not basis.globally_integral:
        raise BasisVerificationError("globally-integral", "normalization needs it")
    if not basis_inf.local_at_infinity:
        raise BasisVerificationError("local-at-infinity", "normalization needs it")
    n = basis.n
    rows = basis.mat.row_lists()
    s = (basis.mat * basis_inf.inv_mat()).row_lists()
    while True:
        d = []
        for i in range(n):
            orders = [c.order_at_infinity() for c in s[i] if not c.is_zero()]
            if not orders:
                raise BasisVerificationError("basis-invertible", "zero basis row")
            d.append(max(-o for o in orders))
        lead = []
        for i in range(n):
            row = []
            for j in range(n):
                c = s[i][j]
                if not c.is_zero() and c.order_at_infinity() == -d[i]:
                    row.append(c.num.lc() / c.den.lc())
                else:
                    row.append(K.zero)
            lead.append(row)
        lam = Matrix.from_rows(K, lead)
        kernel = lam.transpose().nullspace()
        if not kernel:
            break
        c = kernel[0]
        candidates = [i for i in range(n) if not K.is_zero(c[i])]
        k = max(candidates, key=lambda i: (d[i], i))
        x = X_RING.gen
        new_row = [KX.zero] * n
        new_s = [KX.zero] * n
        for i in candidates:
            mult = KX.of(c[i] * x ** (d[k] - d[i]))
            for j in range(n):
                new_row[j] = new_row[j] + mult * rows[i][j]
                new_s[j] = new_s[j] + mult * s[i][j]
        rows[k] = new_row
        s[k] = new_s
    tau = []
    for i in range(n):
        if d[i] < 0:
            raise BasisVerificationError("tau-nonnegative", "pole order %d" % d[i])
        tau.append(d[i])
    return BasisData(basis.field, Matrix.from_rows(KX, rows),
                     globally_integral=True, normal_at_infinity=True, tau=tuple(tau))


# ---------------------------------------------------------------------------
# integrality predicates
# ---------------------------------------------------------------------------


def is_integral_at(f, basis, place):
    """Whether f is integral at a finite place (root of a polynomial) or infinity."""
    if place == INFINITY:
        if basis.local_at_infinity:
            tau = (0,) * basis.n
        elif basis.normal_at_infinity and basis.tau is not None:
            tau = basis.tau
        else:
            raise BasisVerificationError("local-at-infinity",
                                         "basis lacks data for the infinite place")
        for c, ti in zip(basis.coords_of(f), tau):
            if c.is_zero():
                continue
            if c.order_at_infinity() < ti:
                return False
        return True
    if not basis.globally_integral:
        raise BasisVerificationError("globally-integral",
                                     "finite-place test needs an integral basis")
    v = place if isinstance(place, UniPoly) else place[1]
    for c in basis.coords_of(f):
        if c.is_zero():
            continue
        if poly_gcd(c.den, v).degree > 0:
            return False
    return True


def has_double_root_at_infinity(f, basis):
    """True iff x^2 * f is integral at infinity."""
    x2 = KX.of(X_RING.gen ** 2)
    return is_integral_at(f.scale(x2), basis, INFINITY)


def minimal_polynomial(elem, var="z"):
    """Monic minimal polynomial of an element of A over K(x)."""
    from .rings import PolyRing
    F = elem.field
    n = F.n
    powers = [F.one()]
    for _ in range(n):
        powers.append(powers[-1] * elem)
    for k in range(1, n + 1):
        rows = [list(powers[i].coords) for i in range(k + 1)]
        mat = Matrix.from_rows(KX, rows)
        for vec in mat.transpose().nullspace():
            if not vec[k].is_zero():
                inv = vec[k].inverse()
                coeffs = [vec[i] * inv for i in range(k + 1)]
                return PolyRing(KX, var).poly(coeffs)
    raise ArithmeticError("no minimal polynomial found (inconsistent field)")


def integrality_check_failure(basis):
    """Necessary conditions for a global integral basis; None when all pass."""
    for w in basis.elements:
        mp = minimal_polynomial(w)
        for c in mp.coeffs:
            if not c.is_polynomial():
                return "monic-minimal-polynomial"
    data = basis.derivation_data("x")
    e = data.e
    if e.degree > 0 and poly_gcd(e, e.deriv()).degree != 0:
        return "squarefree-e"
    return None


def infinity_degree_check_failure(basis):
    """Degree test for a local basis at infinity; None when it passes."""
    data = basis.derivation_data("x")
    if data.max_deg() >= data.e.degree:
        return "entry-degrees-below-e"
    return None


def verify_supplied_basis(basis):
    """Run all verification predicates on a user-supplied global basis."""
    try:
        basis.inv_mat()
    except ValueError:
        raise BasisVerificationError("basis-invertible")
    failure = integrality_check_failure(basis)
    if failure is not None:
        raise BasisVerificationError(failure)
    basis.globally_integral = True
    return basis
