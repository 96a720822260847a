"""Symplectic matrices acting on the big cell, and their Lie algebra.

``M = (A, B; C, D)`` moves the plane ``(Id; h)`` to ``(A + Bh; C + Dh)``,
which is the graph of ``(C + Dh)(A + Bh)^-1`` whenever ``A + Bh`` is
invertible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import BadShape, DivisionByZero, LeavesBigCell, NotInvertible, NotSymmetric, NotSymplectic
from .exact import DualRational
from .lag_grassmann import SymMatrix, standard_symplectic
from .linalg import Matrix, det, inverse


def is_symplectic(m: Matrix) -> bool:
    """Exact check of ``M^t I M == I``."""
    if not m.is_square or m.rows % 2 or m.rows == 0:
        raise BadShape(f"expected a 2n x 2n matrix, got {m.shape}")
    i = standard_symplectic(m.rows // 2)
    return m.T @ i @ m == i


class SymplecticMatrix:
    __slots__ = ("n", "A", "B", "C", "D")

    def __init__(self, a: Matrix, b: Matrix, c: Matrix, d: Matrix):
        n = a.rows
        if any(x.shape != (n, n) for x in (a, b, c, d)):
            raise BadShape("symplectic blocks must all be n x n")
        for name, val in zip(self.__slots__, (n, a, b, c, d)):
            object.__setattr__(self, name, val)
        if not is_symplectic(self.matrix):
            raise NotSymplectic("M^t I M != I")

    def __setattr__(self, name, val):
        raise AttributeError("SymplecticMatrix is immutable")

    @classmethod
    def from_matrix(cls, m: Matrix) -> "SymplecticMatrix":
        return cls(*m.split_blocks())

    @classmethod
    def identity(cls, n: int) -> "SymplecticMatrix":
        z, i = Matrix.zeros(n), Matrix.identity(n)
        return cls(i, z, z, i)

    @property
    def matrix(self) -> Matrix:
        return Matrix.block(self.A, self.B, self.C, self.D)

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if not isinstance(other, SymplecticMatrix):
            return NotImplemented
        return SymplecticMatrix.from_matrix(self.matrix @ other.matrix)

    def __eq__(self, other):
        if not isinstance(other, SymplecticMatrix):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"SymplecticMatrix({self.matrix!r})"


def gl_generator(d: Matrix) -> SymplecticMatrix:
    """Element acting by ``h -> D^t h D``.

    The block form is ``(D^-1, 0; 0, D^t)``, i.e. ``((E^t)^-1, 0; 0, E)``
    with ``E = D^t``.
    """
    if not d.is_square:
        raise BadShape("D must be square")
    if det(d) == 0:
        raise NotInvertible("D must be invertible")
    z = Matrix.zeros(d.rows)
    return SymplecticMatrix(inverse(d), z, z, d.T)


def translation(c: Matrix) -> SymplecticMatrix:
    """``(1, 0; C, 1)``, acting by ``h -> h + C``."""
    if not c.is_symmetric():
        raise NotSymmetric("C must be symmetric")
    n = c.rows
    return SymplecticMatrix(Matrix.identity(n), Matrix.zeros(n), c, Matrix.identity(n))


def shear(b: Matrix) -> SymplecticMatrix:
    """``(1, B; 0, 1)``, acting by ``h -> h (1 + B h)^-1``."""
    if not b.is_symmetric():
        raise NotSymmetric("B must be symmetric")
    n = b.rows
    return SymplecticMatrix(Matrix.identity(n), b, Matrix.zeros(n), Matrix.identity(n))


_GENERATORS = {"gl": gl_generator, "translate": translation, "shear": shear}


def generator(kind: str, param: Matrix) -> SymplecticMatrix:
    try:
        make = _GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown generator kind {kind!r}") from None
    return make(param)


def fractional_linear(a: Matrix, b: Matrix, c: Matrix, d: Matrix, h: Matrix) -> Matrix:
    """``(C + D h)(A + B h)^-1`` for arbitrary blocks; no symmetry is assumed."""
    y = a + b @ h
    try:
        yinv = inverse(y)
    except (NotInvertible, DivisionByZero):
        raise LeavesBigCell("det(A + B h) = 0: the image is not in the big cell") from None
    return (c + d @ h) @ yinv


def action(m: SymplecticMatrix, h: SymMatrix) -> SymMatrix:
    if h.n != m.n:
        raise BadShape(f"dimension mismatch: M acts on n={m.n}, h has n={h.n}")
    out = fractional_linear(m.A, m.B, m.C, m.D, h.to_matrix())
    if not out.is_symmetric():
        # cannot happen for a validated symplectic M
        raise AssertionError("action image is not symmetric")
    return SymMatrix.from_matrix(out)


class SpAlgebraElement:
    """``(-Ddot^t, Bdot; Cdot, Ddot)`` with ``Bdot``, ``Cdot`` symmetric."""

    __slots__ = ("n", "Bdot", "Cdot", "Ddot")

    def __init__(self, bdot: Matrix, cdot: Matrix, ddot: Matrix):
        n = ddot.rows
        if any(x.shape != (n, n) for x in (bdot, cdot, ddot)):
            raise BadShape("algebra blocks must all be n x n")
        if not bdot.is_symmetric() or not cdot.is_symmetric():
            raise NotSymmetric("Bdot and Cdot must be symmetric")
        for name, val in zip(self.__slots__, (n, bdot, cdot, ddot)):
            object.__setattr__(self, name, val)

    def __setattr__(self, name, val):
        raise AttributeError("SpAlgebraElement is immutable")

    @classmethod
    def zero(cls, n: int) -> "SpAlgebraElement":
        z = Matrix.zeros(n)
        return cls(z, z, z)

    @property
    def matrix(self) -> Matrix:
        return Matrix.block(-self.Ddot.T, self.Bdot, self.Cdot, self.Ddot)

    def curve(self) -> SymplecticMatrix:
        """``Id + eps X`` over the dual rationals; exactly symplectic because eps^2 = 0."""
        eps = DualRational(0, 1)
        m = Matrix.identity(2 * self.n).map(DualRational) + self.matrix.map(lambda x: eps * x)
        return SymplecticMatrix.from_matrix(m)


def in_sp_algebra(x: Matrix) -> bool:
    """``X^t I + I X == 0``."""
    if not x.is_square or x.rows % 2:
        raise BadShape("expected a 2n x 2n matrix")
    i = standard_symplectic(x.rows // 2)
    return (x.T @ i + i @ x).is_zero()


def infinitesimal_action(x: SpAlgebraElement, h: SymMatrix) -> SymMatrix:
    """Velocity ``Cdot + Ddot h + h Ddot^t - h Bdot h`` of the action at ``h``."""
    if x.n != h.n:
        raise BadShape(f"dimension mismatch: X has n={x.n}, h has n={h.n}")
    hm = h.to_matrix()
    v = x.Cdot + x.Ddot @ hm + hm @ x.Ddot.T - hm @ x.Bdot @ hm
    return SymMatrix.from_matrix(v)


def action_slope(x: SpAlgebraElement, h: SymMatrix) -> SymMatrix:
    """eps-part of ``action(Id + eps X, h)``, evaluated over dual rationals."""
    out = action(x.curve(), h)
    return SymMatrix(h.n, [e.slope for e in out.upper])


def omega_eval(v: Sequence, w: Sequence) -> Fraction:
    """``v^t I w`` for vectors in coordinates ``(e_1..e_n, eps^1..eps^n)``."""
    if len(v) != len(w) or len(v) % 2 or not v:
        raise BadShape("omega needs two vectors of the same even length")
    n = len(v) // 2
    # I = (0, -Id; Id, 0)
    return sum((-v[i] * w[n + i] + v[n + i] * w[i] for i in range(n)), Fraction(0))
