"""Exact integer and rational linear algebra.

Everything here works over Python's arbitrary-precision ``int`` and
``fractions.Fraction``; there is no floating point.  Matrices are small
(rank below about twenty) so plain row-of-tuples storage is adequate.
"""

from dataclasses import dataclass, field
from fractions import Fraction


class SingularMatrixError(ValueError):
    """Raised when an operation needs an invertible matrix."""


class IntMatrix:
    """Immutable integer matrix stored row-major as a tuple of tuples."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        self._rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def diagonal(cls, entries):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)]
                    for i in range(n)], n)

    @property
    def rows(self):
        return self._rows

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def entries(self):
        return tuple(x for row in self._rows for x in row)

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def row(self, i):
        return self._rows[i]

    def col(self, j):
        return tuple(row[j] for row in self._rows)

    @property
    def T(self):
        return IntMatrix([self.col(j) for j in range(self.ncols)], self.nrows)

    def is_square(self):
        return self.nrows == self.ncols

    def is_symmetric(self):
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.nrows) for j in range(i))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch %r @ %r"
                                 % (self.shape, other.shape))
            cols = [other.col(j) for j in range(other.ncols)]
            return IntMatrix([[dot(row, c) for c in cols]
                              for row in self._rows], other.ncols)
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(dot(row, vec) for row in self._rows)

    def __neg__(self):
        return IntMatrix([[-x for x in row] for row in self._rows], self.ncols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([[a + b for a, b in zip(r, s)]
                          for r, s in zip(self._rows, other.rows)], self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            return self.shape == other.shape and self._rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self._rows))

    def submatrix(self, rows, cols):
        return IntMatrix([[self._rows[i][j] for j in cols] for i in rows],
                         len(cols))

    def tolist(self):
        return [list(row) for row in self._rows]

    def __repr__(self):
        return "IntMatrix(%r)" % (self.tolist(),)


def as_matrix(a):
    return a if isinstance(a, IntMatrix) else IntMatrix(a)


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


@dataclass(frozen=True)
class SNFDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple = field(default=())

    @property
    def rank(self):
        return sum(1 for d in self.invariant_factors if d != 0)


def smith_normal_form(a):
    """Smith normal form with transforms.

    The pivot at each stage is the entry of smallest nonzero absolute value
    in the remaining block, ties broken by row-major position, which makes
    the decomposition a deterministic function of the input.
    """
    a = as_matrix(a)
    m, n = a.shape
    A = [list(row) for row in a.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row[dst] += k * row[src]
        if k:
            A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        if k:
            for row in A:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    x = A[i][j]
                    if x and (pivot is None or abs(x) < pivot[0]):
                        pivot = (abs(x), i, j)
            if pivot is None:
                break
            _, pi, pj = pivot
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    factors = tuple(A[i][i] for i in range(min(m, n)))
    return SNFDecomposition(IntMatrix(U, m), IntMatrix(A, n), IntMatrix(V, n),
                            factors)


def invariant_factors(a):
    return smith_normal_form(a).invariant_factors


def determinant(a):
    """Exact signed determinant (Bareiss fraction-free elimination)."""
    a = as_matrix(a)
    if not a.is_square():
        raise ValueError("determinant of non-square %dx%d matrix" % a.shape)
    n = a.nrows
    if n == 0:
        return 1
    M = [list(row) for row in a.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rational_inverse(a):
    """Exact inverse over the rationals, as a tuple of Fraction rows."""
    a = as_matrix(a)
    if not a.is_square():
        raise ValueError("inverse of non-square matrix")
    n = a.nrows
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a.rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return tuple(tuple(row[n:]) for row in M)


def solve(a, b):
    """Solve ``a @ y == b`` exactly for square nonsingular ``a``."""
    a = as_matrix(a)
    n = a.nrows
    if not a.is_square():
        raise ValueError("solve needs a square matrix")
    if len(b) != n:
        raise ValueError("dimension mismatch: %d vs %d" % (n, len(b)))
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a.rows, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        for r in range(c + 1, n):
            if M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    y = [Fraction(0)] * n
    for c in reversed(range(n)):
        s = M[c][n] - sum(M[c][j] * y[j] for j in range(c + 1, n))
        y[c] = s / M[c][c]
    return tuple(y)


def evaluate_form(q, xi):
    """Return ``xi^T q^{-1} xi`` as an exact Fraction."""
    y = solve(q, xi)
    return sum(Fraction(x) * v for x, v in zip(xi, y))


def leading_minors(a):
    a = as_matrix(a)
    return [determinant(a.submatrix(range(k), range(k)))
            for k in range(1, a.nrows + 1)]


def definiteness(a):
    """Classify a symmetric matrix as 'positive', 'negative' or 'indefinite'.

    'indefinite' also covers degenerate (semidefinite) forms.  Uses
    Sylvester's criterion on leading principal minors.
    """
    a = as_matrix(a)
    if not a.is_symmetric():
        raise ValueError("definiteness of non-symmetric matrix")
    minors = leading_minors(a)
    if all(d > 0 for d in minors):
        return "positive"
    if all((d > 0) if k % 2 == 0 else (d < 0) for k, d in enumerate(minors, 1)):
        return "negative"
    return "indefinite"


def inertia(a):
    """Return (n_plus, n_minus, n_zero) for a symmetric integer matrix."""
    a = as_matrix(a)
    if not a.is_symmetric():
        raise ValueError("inertia of non-symmetric matrix")
    n = a.nrows
    M = [[Fraction(x) for x in row] for row in a.rows]
    plus = minus = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if M[i][i] != 0), None)
        if k is None:
            # zero diagonal: find an off-diagonal entry and fold it in
            pair = next(((i, j) for i in active for j in active
                         if i != j and M[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for r in range(n):
                M[i][r] += M[j][r]
            for r in range(n):
                M[r][i] += M[r][j]
            k = i
        p = M[k][k]
        if p > 0:
            plus += 1
        else:
            minus += 1
        active.remove(k)
        pivot_row = M[k][:]
        for i in active:
            if pivot_row[i] != 0:
                f = pivot_row[i] / p
                for j in active:
                    M[i][j] -= f * pivot_row[j]
                M[i][k] = M[k][i] = Fraction(0)
    return plus, minus, n - plus - minus


def signature(a):
    plus, minus, _ = inertia(a)
    return plus - minus


def rank(a):
    return smith_normal_form(a).rank


def integer_kernel(a):
    """Basis (as rows) of the saturated lattice ``{v in Z^n : a @ v == 0}``."""
    a = as_matrix(a)
    snf = smith_normal_form(a)
    r = snf.rank
    V = snf.V
    return IntMatrix([V.col(j) for j in range(r, a.ncols)], a.ncols)


def solve_integer(rows, v):
    """Integer coefficients ``c`` with ``sum c_i rows[i] == v``, or None."""
    B = as_matrix(rows)
    # c @ B == v  <=>  B^T c == v
    snf = smith_normal_form(B.T)
    Uv = snf.U @ tuple(v)
    y = []
    for i, d in enumerate(snf.invariant_factors):
        if d == 0:
            if Uv[i]:
                return None
            y.append(0)
        else:
            if Uv[i] % d:
                return None
            y.append(Uv[i] // d)
    y += [0] * (B.nrows - len(y))
    if any(Uv[i] for i in range(len(snf.invariant_factors), len(Uv))):
        return None
    return snf.V @ tuple(y)


def mod2_reduce(x):
    """Representative of a rational modulo 2 in the interval (-1, 1]."""
    x = Fraction(x)
    r = x - 2 * ((x + 1) // 2)
    if r == -1:
        r = Fraction(1)
    return r


def congruent_mod2(x, y):
    d = Fraction(x) - Fraction(y)
    return d.denominator == 1 and d.numerator % 2 == 0


def format_rational(x):
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_rational(s):
    return Fraction(s)
