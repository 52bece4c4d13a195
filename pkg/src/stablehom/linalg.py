"""Exact scalar arithmetic and dense matrices.

Two ground fields are supported: a prime field F_p with odd p (elements are
ints reduced to [0, p)) and the rationals (elements are ``fractions.Fraction``).
All decompositions are plain Gaussian elimination with exact pivoting; there
is no floating point anywhere in the package.
"""

from fractions import Fraction

from .errors import ShapeMismatch


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field F_p for an odd prime p. Elements are ints in [0, p)."""

    def __init__(self, p):
        if not _is_prime(p) or p == 2:
            raise ValueError(f"need an odd prime, got {p}")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F_{self.p}"

    def zero(self):
        return 0

    def one(self):
        return 1

    def of(self, n):
        """Coerce an int or Fraction into the field."""
        if isinstance(n, Fraction):
            return self.mul(n.numerator % self.p, self.inv(n.denominator % self.p))
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def random(self, rng):
        return rng.randrange(self.p)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.p)


class RationalField:
    """The rationals; elements are ``fractions.Fraction``."""

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "QQ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def of(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def random(self, rng):
        return Fraction(rng.randrange(-20, 21), rng.randrange(1, 8))

    def random_nonzero(self, rng):
        while True:
            x = self.random(rng)
            if x != 0:
                return x


QQ = RationalField()

#: Default prime: large enough that random-vector heuristics rarely degenerate.
DEFAULT_PRIME = 32003

GF = PrimeField


class Matrix:
    """A dense matrix over a fixed field, immutable by convention.

    Entries are stored row-major as a list of row lists. All mutating logic
    lives in constructors; the public methods return fresh matrices.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows, cols, data):
        if rows < 0 or cols < 0:
            raise ShapeMismatch(f"negative shape {rows}x{cols}")
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ShapeMismatch(f"entry grid does not match shape {rows}x{cols}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def zero(cls, field, rows, cols):
        z = field.zero()
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        return cls(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, field, rows):
        data = [[field.of(x) for x in r] for r in rows]
        ncols = len(data[0]) if data else 0
        return cls(field, len(data), ncols, data)

    @classmethod
    def from_cols(cls, field, cols):
        if not cols:
            return cls(field, 0, 0, [])
        nrows = len(cols[0])
        data = [[field.of(cols[j][i]) for j in range(len(cols))] for i in range(nrows)]
        return cls(field, nrows, len(cols), data)

    @classmethod
    def random(cls, field, rows, cols, rng):
        return cls(field, rows, cols, [[field.random(rng) for _ in range(cols)] for _ in range(rows)])

    def entry(self, i, j):
        return self.data[i][j]

    def row(self, i):
        return list(self.data[i])

    def col(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.rows == self.rows
            and other.cols == self.cols
            and other.data == self.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"

    def is_zero(self):
        f = self.field
        return all(f.is_zero(x) for r in self.data for x in r)

    def add(self, other):
        self._same_shape(other)
        f = self.field
        return Matrix(
            f, self.rows, self.cols,
            [[f.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
        )

    def sub(self, other):
        self._same_shape(other)
        f = self.field
        return Matrix(
            f, self.rows, self.cols,
            [[f.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
        )

    def neg(self):
        f = self.field
        return Matrix(f, self.rows, self.cols, [[f.neg(x) for x in r] for r in self.data])

    def scale(self, c):
        f = self.field
        c = f.of(c)
        return Matrix(f, self.rows, self.cols, [[f.mul(c, x) for x in r] for r in self.data])

    def mul(self, other):
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        z = f.zero()
        bt = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            ri = self.data[i]
            row = []
            for j in range(other.cols):
                cj = bt[j]
                acc = z
                for k in range(self.cols):
                    acc = f.add(acc, f.mul(ri[k], cj[k]))
                row.append(acc)
            out.append(row)
        return Matrix(f, self.rows, other.cols, out)

    def __matmul__(self, other):
        return self.mul(other)

    def apply(self, vec):
        """Matrix times column vector (a plain list)."""
        if len(vec) != self.cols:
            raise ShapeMismatch(f"vector length {len(vec)} != {self.cols}")
        f = self.field
        z = f.zero()
        out = []
        for i in range(self.rows):
            acc = z
            ri = self.data[i]
            for k in range(self.cols):
                acc = f.add(acc, f.mul(ri[k], vec[k]))
            out.append(acc)
        return out

    def transpose(self):
        return Matrix(self.field, self.cols, self.rows,
                      [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def hstack(self, other):
        if other.rows != self.rows:
            raise ShapeMismatch("hstack row mismatch")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      [self.data[i] + other.data[i] for i in range(self.rows)])

    def vstack(self, other):
        if other.cols != self.cols:
            raise ShapeMismatch("vstack column mismatch")
        return Matrix(self.field, self.rows + other.rows, self.cols,
                      [list(r) for r in self.data] + [list(r) for r in other.data])

    def kron(self, other):
        """Kronecker product; index (i, j) of the left factor is major."""
        f = self.field
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        data = [[f.zero()] * cols for _ in range(rows)]
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.data[i][j]
                if f.is_zero(a):
                    continue
                for k in range(other.rows):
                    base_r = i * other.rows + k
                    rk = other.data[k]
                    dr = data[base_r]
                    for l in range(other.cols):
                        dr[j * other.cols + l] = f.add(dr[j * other.cols + l], f.mul(a, rk[l]))
        return Matrix(f, rows, cols, data)

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeMismatch(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    # -- elimination -------------------------------------------------------

    def rref(self):
        """Reduced row echelon form. Returns (matrix, pivot column list)."""
        f = self.field
        m = [list(r) for r in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r >= self.rows:
                break
            pr = None
            for i in range(r, self.rows):
                if not f.is_zero(m[i][c]):
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = f.inv(m[r][c])
            m[r] = [f.mul(inv, x) for x in m[r]]
            for i in range(self.rows):
                if i != r and not f.is_zero(m[i][c]):
                    factor = m[i][c]
                    m[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return Matrix(f, self.rows, self.cols, m), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis of the right kernel, returned as the columns of a matrix.

        Column count is cols - rank; the basis vectors are the standard
        free-column completions read off the reduced echelon form.
        """
        f = self.field
        R, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        cols = []
        for fc in free:
            v = [f.zero()] * self.cols
            v[fc] = f.one()
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(R.data[r][fc])
            cols.append(v)
        return Matrix.from_cols(f, cols) if cols else Matrix(f, self.cols, 0, [[] for _ in range(self.cols)])

    def image_basis(self):
        """Columns of self that form a basis of the column space."""
        _, pivots = self.rref()
        return Matrix.from_cols(self.field, [self.col(c) for c in pivots]) \
            if pivots else Matrix(self.field, self.rows, 0, [[] for _ in range(self.rows)])

    def solve(self, b):
        """One solution of self @ x = b, or None if inconsistent."""
        if len(b) != self.rows:
            raise ShapeMismatch(f"rhs length {len(b)} != {self.rows}")
        sol = self.solve_matrix(Matrix.from_cols(self.field, [b]))
        return sol.col(0) if sol is not None else None

    def solve_matrix(self, B):
        """One solution X of self @ X = B columnwise, or None."""
        if B.rows != self.rows:
            raise ShapeMismatch("rhs row mismatch")
        return LinearSolver(self).solve_matrix(B)

    def inverse(self):
        """Inverse of a square matrix, or None if singular."""
        if self.rows != self.cols:
            return None
        X = self.solve_matrix(Matrix.identity(self.field, self.rows))
        if X is None:
            return None
        if not self.mul(X).__eq__(Matrix.identity(self.field, self.rows)):
            return None
        return X

    def is_invertible(self):
        return self.rows == self.cols and self.rank() == self.rows


class LinearSolver:
    """Reusable solver for repeated systems M @ x = b with fixed M.

    Precomputes the reduced echelon form of [M | I]; each solve is then a
    single matrix-vector product plus consistency reads.
    """

    def __init__(self, M):
        self.M = M
        self.field = M.field
        aug = M.hstack(Matrix.identity(M.field, M.rows)) if M.rows else M
        R, pivots = aug.rref()
        self.pivots = [c for c in pivots if c < M.cols]
        self.R = R
        # transform rows: P with P@M in echelon form
        self.P = Matrix(M.field, M.rows, M.rows,
                        [row[M.cols:] for row in R.data]) if M.rows else Matrix(M.field, 0, 0, [])
        self.rank = len(self.pivots)

    def solve(self, b):
        """One solution of M @ x = b, or None."""
        f = self.field
        w = self.P.apply(b) if self.M.rows else []
        x = [f.zero()] * self.M.cols
        for r, pc in enumerate(self.pivots):
            x[pc] = w[r]
        # rows beyond the pivot rows must vanish for consistency
        for r in range(self.rank, self.M.rows):
            if not f.is_zero(w[r]):
                return None
        return x

    def solve_matrix(self, B):
        cols = []
        for j in range(B.cols):
            x = self.solve(B.col(j))
            if x is None:
                return None
            cols.append(x)
        return Matrix.from_cols(self.field, cols) if cols else Matrix(self.field, self.M.cols, 0, [[] for _ in range(self.M.cols)])

    def contains(self, b):
        """Whether b lies in the column space of M."""
        return self.solve(b) is not None


def kernel_basis(M):
    """Functional alias: columns form a basis of the right kernel of M."""
    return M.kernel_basis()


def solve(M, b):
    """Functional alias: one solution of M @ x = b, or None."""
    return M.solve(b)


def vec_add(field, u, v):
    return [field.add(a, b) for a, b in zip(u, v)]

def vec_sub(field, u, v):
    return [field.sub(a, b) for a, b in zip(u, v)]

def vec_scale(field, c, u):
    return [field.mul(c, x) for x in u]

def vec_is_zero(field, u):
    return all(field.is_zero(x) for x in u)

def zero_vec(field, n):
    return [field.zero()] * n
