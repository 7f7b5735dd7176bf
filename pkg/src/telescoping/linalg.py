"""Exact linear algebra over an abstract field.

Everything is computed by fraction-full Gaussian elimination; entries live in
whatever field the matrix was constructed over (Q, Q(t), Q(t)(x), ...).
Matrices are immutable after construction.
"""

from .rings import PolyRing, _field_inv


class Matrix:
    """Dense matrix over a field, stored row-major."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows, cols, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match the shape")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, field, row_lists):
        rows = len(row_lists)
        cols = len(row_lists[0]) if rows else 0
        flat = []
        for r in row_lists:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(field.of(c) if isinstance(c, int) else c for c in r)
        return cls(field, rows, cols, flat)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(o if i == j else z for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.field, self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.field, self.rows, self.cols,
                      tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in product")
            z = self.field.zero
            out = []
            for i in range(self.rows):
                ri = self.row(i)
                for j in range(other.cols):
                    acc = z
                    for k in range(self.cols):
                        acc = acc + ri[k] * other.entries[k * other.cols + j]
                    out.append(acc)
            return Matrix(self.field, self.rows, other.cols, out)
        return Matrix(self.field, self.rows, self.cols, tuple(other * a for a in self.entries))

    def __rmul__(self, scalar):
        return Matrix(self.field, self.rows, self.cols, tuple(scalar * a for a in self.entries))

    def transpose(self):
        return Matrix(self.field, self.cols, self.rows,
                      tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        acc = self.field.zero
        for i in range(self.rows):
            acc = acc + self[i, i]
        return acc

    def rref(self):
        """Reduced row echelon form: (matrix, pivot column tuple, rank)."""
        f = self.field
        m = self.row_lists()
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = None
            for i in range(r, self.rows):
                if not f.is_zero(m[i][c]):
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = _inv(f, m[r][c])
            m[r] = [inv * a for a in m[r]]
            for i in range(self.rows):
                if i != r and not f.is_zero(m[i][c]):
                    coef = m[i][c]
                    m[i] = [a - coef * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        flat = [a for row in m for a in row]
        return Matrix(f, self.rows, self.cols, flat), tuple(pivots), r

    def rank(self):
        return self.rref()[2]

    def nullspace(self):
        """Basis of the right kernel, as a list of coefficient tuples."""
        f = self.field
        red, pivots, rank = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            vec = [f.zero] * self.cols
            vec[fc] = f.one
            for r, pc in enumerate(pivots):
                vec[pc] = -red[r, fc]
            basis.append(tuple(vec))
        return basis

    def solve_left(self, rhs):
        """One solution x of x * self = rhs (row vector), or None."""
        return self.transpose().solve_right(rhs)

    def solve_right(self, rhs):
        """One solution x of self * x = rhs (column vector as tuple), or None."""
        f = self.field
        aug = Matrix(f, self.rows, self.cols + 1,
                     tuple(a for i in range(self.rows)
                           for a in tuple(self.row(i)) + (rhs[i],)))
        red, pivots, rank = aug.rref()
        if self.cols in pivots:
            return None
        x = [f.zero] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red[r, self.cols]
        return tuple(x)

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        f = self.field
        m = self.row_lists()
        det = f.one
        for c in range(self.cols):
            pr = None
            for i in range(c, self.rows):
                if not f.is_zero(m[i][c]):
                    pr = i
                    break
            if pr is None:
                return f.zero
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = -det
            det = det * m[c][c]
            inv = _inv(f, m[c][c])
            for i in range(c + 1, self.rows):
                if not f.is_zero(m[i][c]):
                    coef = m[i][c] * inv
                    m[i] = [a - coef * b for a, b in zip(m[i], m[c])]
        return det

    def inverse(self):
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        f = self.field
        n = self.rows
        aug = Matrix(f, n, 2 * n,
                     tuple(a for i in range(n)
                           for a in tuple(self.row(i))
                           + tuple(f.one if i == j else f.zero for j in range(n))))
        red, pivots, rank = aug.rref()
        if rank < n or any(p >= n for p in pivots[:n]):
            raise ValueError("singular matrix")
        return Matrix(f, n, n, tuple(red[i, n + j] for i in range(n) for j in range(n)))

    def charpoly(self, var="s"):
        """Monic characteristic polynomial det(s*I - self), by Faddeev-LeVerrier.

        Valid over any field of characteristic zero.  Raises ValueError for a
        non-square matrix.
        """
        if self.rows != self.cols:
            raise ValueError("characteristic polynomial of a non-square matrix")
        f = self.field
        n = self.rows
        ring = PolyRing(f, var)
        if n == 0:
            return ring.one
        cs = [f.one]  # coefficient of s^n
        m = Matrix.identity(f, n)
        for k in range(1, n + 1):
            m = self * m
            c = -(m.trace() * _inv(f, f.of(k)))
            cs.append(c)
            m = m + c * Matrix.identity(f, n)
        return ring.poly(list(reversed(cs)))

    def __repr__(self):
        return "Matrix(%dx%d, %r)" % (self.rows, self.cols, self.row_lists())


def _inv(field, c):
    return _field_inv(field, c)
