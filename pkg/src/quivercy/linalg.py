"""Exact linear algebra over the rationals and prime fields.

Everything downstream (algebra bases, Hom spaces, resolutions) reduces to
rank/kernel/solve on dense matrices.  Scalars are gmpy2 rationals when
available (much faster than fractions.Fraction), or elements of a prime
field for the optional mod-p mode.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    _mpq = Fraction


class RationalField:
    """The field Q.  Scalars are gmpy2.mpq (or Fraction as fallback)."""

    name = "Q"

    def zero(self):
        return _mpq(0)

    def one(self):
        return _mpq(1)

    def of(self, num, den=1):
        return _mpq(num, den)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class FpElt:
    """Element of Z/p.  Supports the arithmetic the Mat code uses."""

    __slots__ = ("p", "v")

    def __init__(self, p, v):
        self.p = p
        self.v = v % p

    def __add__(self, other):
        return FpElt(self.p, self.v + other.v)

    def __sub__(self, other):
        return FpElt(self.p, self.v - other.v)

    def __neg__(self):
        return FpElt(self.p, -self.v)

    def __mul__(self, other):
        return FpElt(self.p, self.v * other.v)

    def __truediv__(self, other):
        return FpElt(self.p, self.v * pow(other.v, -1, self.p))

    def __eq__(self, other):
        if isinstance(other, FpElt):
            return self.v == other.v
        return self.v == other % self.p if isinstance(other, int) else NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class PrimeField:
    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def zero(self):
        return FpElt(self.p, 0)

    def one(self):
        return FpElt(self.p, 1)

    def of(self, num, den=1):
        return FpElt(self.p, num) / FpElt(self.p, den)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = RationalField()


class Mat:
    """Dense matrix over an exact field.  Treated as immutable after build."""

    __slots__ = ("rows", "cols", "a", "field")

    def __init__(self, rows, cols, a, field=QQ):
        self.rows = rows
        self.cols = cols
        self.a = a  # list of row lists
        self.field = field

    @staticmethod
    def zero(rows, cols, field=QQ):
        z = field.zero()
        return Mat(rows, cols, [[z] * cols for _ in range(rows)], field)

    @staticmethod
    def identity(n, field=QQ):
        z, o = field.zero(), field.one()
        return Mat(n, n, [[o if i == j else z for j in range(n)] for i in range(n)], field)

    @staticmethod
    def from_rows(rows, field=QQ, ncols=None):
        rows = [list(r) for r in rows]
        if rows:
            ncols = len(rows[0])
        elif ncols is None:
            ncols = 0
        return Mat(len(rows), ncols, rows, field)

    def copy(self):
        return Mat(self.rows, self.cols, [row[:] for row in self.a], self.field)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.a == other.a
        )

    def __hash__(self):
        raise TypeError("Mat is not hashable")

    def is_zero(self):
        return all(not x for row in self.a for x in row)

    def __add__(self, other):
        return Mat(
            self.rows,
            self.cols,
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.a, other.a)],
            self.field,
        )

    def __sub__(self, other):
        return Mat(
            self.rows,
            self.cols,
            [[x - y for x, y in zip(r, s)] for r, s in zip(self.a, other.a)],
            self.field,
        )

    def __neg__(self):
        return Mat(self.rows, self.cols, [[-x for x in r] for r in self.a], self.field)

    def scale(self, c):
        return Mat(self.rows, self.cols, [[c * x for x in r] for r in self.a], self.field)

    def __mul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        z = self.field.zero()
        out = []
        for r in self.a:
            nz = [(j, x) for j, x in enumerate(r) if x]
            row = [z] * other.cols
            for j, x in nz:
                br = other.a[j]
                for k, y in enumerate(br):
                    if y:
                        row[k] = row[k] + x * y
            out.append(row)
        return Mat(self.rows, other.cols, out, self.field)

    def apply(self, vec):
        """Matrix times column vector (list)."""
        z = self.field.zero()
        out = []
        for r in self.a:
            s = z
            for x, y in zip(r, vec):
                if x and y:
                    s = s + x * y
            out.append(s)
        return out

    def transpose(self):
        if self.rows == 0:
            return Mat(self.cols, 0, [[] for _ in range(self.cols)], self.field)
        return Mat(self.cols, self.rows, [list(r) for r in zip(*self.a)], self.field)

    @staticmethod
    def hstack(mats):
        mats = list(mats)
        rows = mats[0].rows
        a = [sum((m.a[i] for m in mats), []) for i in range(rows)]
        return Mat(rows, sum(m.cols for m in mats), a, mats[0].field)

    @staticmethod
    def vstack(mats):
        mats = list(mats)
        cols = mats[0].cols
        a = []
        for m in mats:
            a.extend(row[:] for row in m.a)
        return Mat(sum(m.rows for m in mats), cols, a, mats[0].field)

    @staticmethod
    def block_diag(mats, field=QQ):
        mats = list(mats)
        if not mats:
            return Mat.zero(0, 0, field)
        field = mats[0].field
        R = sum(m.rows for m in mats)
        C = sum(m.cols for m in mats)
        out = Mat.zero(R, C, field)
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                out.a[r0 + i][c0 : c0 + m.cols] = m.a[i][:]
            r0 += m.rows
            c0 += m.cols
        return out

    def kron(self, other):
        f = self.field
        out = Mat.zero(self.rows * other.rows, self.cols * other.cols, f)
        for i in range(self.rows):
            for j in range(self.cols):
                x = self.a[i][j]
                if not x:
                    continue
                for k in range(other.rows):
                    orow = other.a[k]
                    trow = out.a[i * other.rows + k]
                    base = j * other.cols
                    for l in range(other.cols):
                        y = orow[l]
                        if y:
                            trow[base + l] = x * y
        return out

    def column(self, j):
        return [r[j] for r in self.a]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    # -- elimination --------------------------------------------------

    def rref(self):
        """Reduced row echelon form.  Returns (R, pivot_columns)."""
        a = [row[:] for row in self.a]
        m, n = self.rows, self.cols
        pivots = []
        r = 0
        one = self.field.one()
        for c in range(n):
            if r >= m:
                break
            # prefer +-1 pivots to keep entries small
            piv = -1
            for i in range(r, m):
                x = a[i][c]
                if x:
                    if piv < 0:
                        piv = i
                    if x == one or x == -one:
                        piv = i
                        break
            if piv < 0:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = one / a[r][c]
            if inv != one:
                a[r] = [inv * x for x in a[r]]
            prow = a[r]
            for i in range(m):
                if i != r and a[i][c]:
                    f = a[i][c]
                    arow = a[i]
                    for j in range(c, n):
                        if prow[j]:
                            arow[j] = arow[j] - f * prow[j]
            pivots.append(c)
            r += 1
        return Mat(m, n, a, self.field), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis of the right null space, as a list of column vectors."""
        R, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.cols) if j not in pivset]
        z, one = self.field.zero(), self.field.one()
        basis = []
        for j in free:
            v = [z] * self.cols
            v[j] = one
            for i, pc in enumerate(pivots):
                v[pc] = -R.a[i][j]
            basis.append(v)
        return basis

    def solve(self, b):
        """Some x with self * x = b, or None if inconsistent."""
        aug = Mat(self.rows, self.cols + 1, [r[:] + [y] for r, y in zip(self.a, b)], self.field)
        R, pivots = aug.rref()
        if self.cols in pivots:
            return None
        z = self.field.zero()
        x = [z] * self.cols
        for i, pc in enumerate(pivots):
            x[pc] = R.a[i][self.cols]
        return x

    def solve_matrix(self, B):
        """X with self * X = B (columnwise), or None."""
        aug = Mat.hstack([self, B])
        R, pivots = aug.rref()
        if any(p >= self.cols for p in pivots):
            return None
        z = self.field.zero()
        X = Mat.zero(self.cols, B.cols, self.field)
        for i, pc in enumerate(pivots):
            X.a[pc] = R.a[i][self.cols :]
        return X

    def inverse(self):
        if self.rows != self.cols:
            return None
        X = self.solve_matrix(Mat.identity(self.rows, self.field))
        if X is None:
            return None
        if (self * X) == Mat.identity(self.rows, self.field):
            return X
        return None

    def is_invertible(self):
        return self.rows == self.cols and self.rank() == self.rows

    def column_space_basis(self):
        """Subset of columns forming a basis of the column space."""
        _, pivots = self.rref()
        # pivots of self give independent *columns* only after transposing;
        # run rref on the transpose's transpose trick: pivot columns of
        # rref(self) are exactly the independent columns of self.
        return [self.column(j) for j in pivots]

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols})"


def span_basis(vectors, field=QQ):
    """Reduce a list of coordinate vectors to an rref basis of their span."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    M = Mat.from_rows(vectors, field)
    R, pivots = M.rref()
    return [R.a[i] for i in range(len(pivots))]


def in_span(basis_rows, v, field=QQ):
    """Is v in the row span of basis_rows?  basis_rows may be any list."""
    if not any(v):
        return True
    if not basis_rows:
        return False
    M = Mat.from_rows(basis_rows, field).transpose()
    return M.solve(list(v)) is not None


def rank_and_kernel(m: Mat):
    """Rank plus a basis of the right kernel."""
    kb = m.kernel_basis()
    return m.cols - len(kb), kb


def solve(a: Mat, b):
    return a.solve(b)
