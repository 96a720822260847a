"""Exact dense linear algebra.

Entries are normally :class:`~fractions.Fraction`, but the container and the
division-free routines (products, :func:`det_expansion`) work over any
commutative ring whose elements support ``+``, ``-`` and ``*``; this is how
the same code evaluates determinants of matrices of polynomials or of dual
numbers. Subsets passed to :func:`minor` are 1-based.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import NamedTuple, Sequence

from .errors import BadShape, BadSubset, NotInvertible, NotSquare, NotSymmetric
from .exact import DualRational, is_unit, to_rational


def _entry(x):
    if isinstance(x, (Fraction, DualRational)):
        return x
    if isinstance(x, (int, str)):
        return to_rational(x)
    return x


class Matrix:
    """Immutable row-major matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: Sequence[Sequence], cols: int | None = None):
        grid = tuple(tuple(_entry(x) for x in row) for row in rows)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if any(len(r) != cols for r in grid):
            raise BadShape("ragged matrix rows")
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, val):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls([[Fraction(0)] * cols for _ in range(rows)], cols)

    @classmethod
    def block(cls, a: "Matrix", b: "Matrix", c: "Matrix", d: "Matrix") -> "Matrix":
        if a.rows != b.rows or c.rows != d.rows or a.cols != c.cols or b.cols != d.cols:
            raise BadShape("incompatible blocks")
        top = [ra + rb for ra, rb in zip(a.entries, b.entries)]
        bottom = [rc + rd for rc, rd in zip(c.entries, d.entries)]
        return cls(top + bottom, a.cols + b.cols)

    @classmethod
    def vstack(cls, top: "Matrix", bottom: "Matrix") -> "Matrix":
        if top.cols != bottom.cols:
            raise BadShape("column counts differ")
        return cls(top.entries + bottom.entries, top.cols)

    @classmethod
    def column(cls, v: Sequence) -> "Matrix":
        return cls([[x] for x in v], 1)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    @property
    def T(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.entries)] if self.rows else [], self.rows)

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        """0-based row/column selection."""
        return Matrix([[self.entries[i][j] for j in cols] for i in rows], len(cols))

    def split_blocks(self) -> tuple["Matrix", "Matrix", "Matrix", "Matrix"]:
        if not self.is_square or self.rows % 2:
            raise BadShape("expected an even-dimensional square matrix")
        n = self.rows // 2
        lo, hi = range(n), range(n, 2 * n)
        return (
            self.submatrix(lo, lo),
            self.submatrix(lo, hi),
            self.submatrix(hi, lo),
            self.submatrix(hi, hi),
        )

    def map(self, f) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self.entries], self.cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise BadShape(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise BadShape(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols
        )

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def __mul__(self, scalar) -> "Matrix":
        if isinstance(scalar, Matrix):
            return NotImplemented
        return self.map(lambda x: x * scalar)

    def __rmul__(self, scalar) -> "Matrix":
        if isinstance(scalar, Matrix):
            return NotImplemented
        return self.map(lambda x: scalar * x)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise BadShape(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.T.entries
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                acc = r[0] * c[0] if r else Fraction(0)
                for x, y in zip(r[1:], c[1:]):
                    acc = acc + x * y
                row.append(acc)
            out.append(row)
        return Matrix(out, other.cols)

    def apply(self, v: Sequence) -> list:
        return [x for (x,) in (self @ Matrix.column(v)).entries]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def __repr__(self):
        return f"Matrix({[[str(x) for x in r] for r in self.entries]})"


class Signature(NamedTuple):
    positive: int
    negative: int
    zero: int


def _require_square(m: Matrix) -> None:
    if not m.is_square:
        raise NotSquare(f"matrix of shape {m.shape} is not square")


def _is_rational_matrix(m: Matrix) -> bool:
    return all(isinstance(x, Fraction) for r in m.entries for x in r)


def _bareiss_int(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m: Matrix):
    """Exact determinant.

    Rational matrices use fraction-free Bareiss elimination after clearing
    row denominators; other rings fall back to :func:`det_expansion`.
    """
    _require_square(m)
    n = m.rows
    if n == 0:
        return Fraction(1)
    if not _is_rational_matrix(m):
        return det_expansion(m)
    e = m.entries
    if n == 1:
        return e[0][0]
    if n == 2:
        return e[0][0] * e[1][1] - e[0][1] * e[1][0]
    scale = 1
    rows = []
    for r in e:
        d = lcm(*(x.denominator for x in r))
        scale *= d
        rows.append([x.numerator * (d // x.denominator) for x in r])
    return Fraction(_bareiss_int(rows), scale)


def det_expansion(m: Matrix):
    """Division-free determinant by Laplace expansion along rows.

    Memoised on the set of remaining columns, so it costs O(n 2^n) ring
    products and is valid over any commutative ring.
    """
    _require_square(m)
    n = m.rows
    if n == 0:
        return Fraction(1)
    e = m.entries
    memo: dict[tuple[int, ...], object] = {}

    def rec(row: int, cols: tuple[int, ...]):
        if len(cols) == 1:
            return e[row][cols[0]]
        if cols in memo:
            return memo[cols]
        acc = None
        for k, c in enumerate(cols):
            x = e[row][c]
            if x == 0:
                continue
            term = x * rec(row + 1, cols[:k] + cols[k + 1:])
            if k % 2:
                term = -term
            acc = term if acc is None else acc + term
        if acc is None:
            acc = e[row][cols[0]] * 0
        memo[cols] = acc
        return acc

    return rec(0, tuple(range(n)))


def canonical_subset(s: Sequence[int], bound: int) -> tuple[int, ...]:
    """Validate a 1-based strictly increasing index list."""
    t = tuple(s)
    if any(not isinstance(i, int) or isinstance(i, bool) for i in t):
        raise BadSubset(f"indices must be integers: {s!r}")
    if any(i < 1 or i > bound for i in t):
        raise BadSubset(f"index out of range 1..{bound}: {s!r}")
    if any(a >= b for a, b in zip(t, t[1:])):
        raise BadSubset(f"subset not strictly increasing: {s!r}")
    return t


def minor(m: Matrix, rows: Sequence[int], cols: Sequence[int]):
    """Determinant of the submatrix on 1-based ``rows`` x ``cols``; empty -> 1."""
    r = canonical_subset(rows, m.rows)
    c = canonical_subset(cols, m.cols)
    if len(r) != len(c):
        raise BadSubset(f"subset sizes differ: {len(r)} != {len(c)}")
    k = len(r)
    e = m.entries
    if k == 0:
        return Fraction(1)
    if k == 1:
        return e[r[0] - 1][c[0] - 1]
    if k == 2:
        i, j = r[0] - 1, r[1] - 1
        a, b = c[0] - 1, c[1] - 1
        return e[i][a] * e[j][b] - e[i][b] * e[j][a]
    return det(m.submatrix([i - 1 for i in r], [j - 1 for j in c]))


def adjugate(m: Matrix) -> Matrix:
    """Transpose of the cofactor matrix, so ``m @ adjugate(m) == det(m) * I``."""
    _require_square(m)
    n = m.rows
    if n == 0:
        return Matrix([], 0)
    if n == 1:
        return Matrix([[Fraction(1)]], 1)
    idx = range(n)
    cof = [
        [
            (-1) ** (i + j) * det(m.submatrix([r for r in idx if r != i], [c for c in idx if c != j]))
            for j in idx
        ]
        for i in idx
    ]
    return Matrix(cof, n).T


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over a field and the list of pivot columns."""
    a = [list(r) for r in m.entries]
    rows, cols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = next((i for i in range(r, rows) if is_unit(a[i][c])), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix(a, cols), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[list[Fraction]]:
    """Basis of the right kernel; one vector per free column of the RREF."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -red[row, f]
        basis.append(v)
    return basis


def inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse over a field (or over dual numbers, by unit pivots)."""
    _require_square(m)
    n = m.rows
    aug = Matrix([list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.entries)])
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise NotInvertible("matrix is singular")
    return red.submatrix(range(n), range(n, 2 * n))


def signature(s: Matrix) -> Signature:
    """Sylvester inertia of a symmetric rational matrix by congruence.

    When every remaining diagonal entry vanishes but some ``s[i][j]`` does
    not, adding row/column ``j`` to row/column ``i`` creates the nonzero
    diagonal pivot ``2 s[i][j]``; a fully zero remainder counts as zeros.
    """
    _require_square(s)
    if not s.is_symmetric():
        raise NotSymmetric("signature needs a symmetric matrix")
    a = [list(r) for r in s.entries]
    pos = neg = zero = 0
    while a:
        k = len(a)
        p = next((i for i in range(k) if a[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in range(k) for j in range(i + 1, k) if a[i][j] != 0), None)
            if pair is None:
                zero += k
                break
            i, j = pair
            for c in range(k):
                a[i][c] += a[j][c]
            for r in range(k):
                a[r][i] += a[r][j]
            p = i
        d = a[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        rest = [i for i in range(k) if i != p]
        a = [[a[i][j] - a[i][p] * a[p][j] / d for j in rest] for i in rest]
    return Signature(pos, neg, zero)
