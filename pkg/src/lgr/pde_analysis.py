"""Symbols, characteristics, point classification and the Monge-Ampère test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from .errors import AllZero, BadShape, DimensionMismatch, LimitsExceeded, NotMongeAmpere, NotOnEquation, ZeroCovector
from .exact import to_rational
from .lag_grassmann import MinorIndex, SymMatrix, canonical_pair, minor_indices
from .linalg import Matrix, Signature, inverse, rank, rref, signature
from .pde_poly import PdePolynomial, diff, evaluate, minor_polynomial, restrict_line

MA_MAX_N = 5
MA_MAX_DEGREE = 12


@dataclass(frozen=True)
class SymbolMatrix:
    n: int
    S: Matrix


@dataclass(frozen=True)
class PointClass:
    rank: int
    signature: Signature
    label: str


class MaCoefficients:
    """Coefficients ``c_{I,J}`` of ``F = sum c_{I,J} minor(p; I, J)``.

    Shares the index set (and JSON layout) of a Plücker vector.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Mapping[MinorIndex, object]):
        idx = minor_indices(n)
        full = {k: Fraction(0) for k in idx}
        seen = set()
        for (i, j), v in coeffs.items():
            key = canonical_pair(i, j, n)
            if key in seen:
                raise BadShape(f"coefficient {key} given twice")
            seen.add(key)
            full[key] = to_rational(v)
        if all(v == 0 for v in full.values()):
            raise AllZero("a hyperplane needs a nonzero coefficient")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", full)

    def __setattr__(self, name, val):
        raise AttributeError("MaCoefficients is immutable")

    @classmethod
    def from_values(cls, n: int, values: Sequence) -> "MaCoefficients":
        idx = minor_indices(n)
        if len(values) != len(idx):
            raise BadShape(f"expected {len(idx)} coefficients, got {len(values)}")
        return cls(n, dict(zip(idx, values)))

    def __getitem__(self, pair) -> Fraction:
        i, j = pair
        return self.coeffs[canonical_pair(i, j, self.n)]

    def values(self) -> list[Fraction]:
        return list(self.coeffs.values())

    def items(self):
        return self.coeffs.items()

    def __eq__(self, other):
        if not isinstance(other, MaCoefficients):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, tuple(self.coeffs.values())))

    def __repr__(self):
        return f"MaCoefficients(n={self.n}, {[str(v) for v in self.values()]})"


def symbol(f: PdePolynomial, h: SymMatrix) -> SymbolMatrix:
    if f.n != h.n:
        raise DimensionMismatch(f"polynomial has n={f.n}, point has n={h.n}")
    n = f.n
    s = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s[i][j] = s[j][i] = evaluate(diff(f, i + 1, j + 1), h)
    return SymbolMatrix(n, Matrix(s, n))


def label_for(sig: Signature) -> str:
    pos, neg, zero = sig
    if pos + neg == 0:
        return "zero"
    if zero:
        return "degenerate"
    if pos == 0 or neg == 0:
        return "elliptic"
    if min(pos, neg) == 1:
        return "hyperbolic"
    return "ultrahyperbolic"


def classify_at(f: PdePolynomial, h: SymMatrix) -> PointClass:
    s = symbol(f, h).S
    sig = signature(s)
    return PointClass(sig.positive + sig.negative, sig, label_for(sig))


def _covector(f: PdePolynomial, alpha: Sequence) -> list[Fraction]:
    a = [to_rational(x) for x in alpha]
    if len(a) != f.n:
        raise DimensionMismatch(f"covector has length {len(a)}, expected {f.n}")
    if all(x == 0 for x in a):
        raise ZeroCovector("alpha must be nonzero")
    return a


def _require_on_equation(f: PdePolynomial, h: SymMatrix) -> None:
    if evaluate(f, h) != 0:
        raise NotOnEquation("F(h) != 0: characteristics are defined only on the equation")


def symbol_on(s: Matrix, alpha: Sequence) -> Fraction:
    """The quadratic form ``sum S_ij a_i a_j``."""
    n = s.rows
    return sum((s[i, j] * alpha[i] * alpha[j] for i in range(n) for j in range(n)), Fraction(0))


def is_characteristic(f: PdePolynomial, h: SymMatrix, alpha: Sequence, *, on_shell: bool = True) -> bool:
    """Whether ``ker alpha`` is characteristic at ``h``; ``on_shell=False`` skips ``F(h) = 0``."""
    a = _covector(f, alpha)
    if on_shell:
        _require_on_equation(f, h)
    return symbol_on(symbol(f, h).S, a) == 0


def is_strong_characteristic(f: PdePolynomial, h: SymMatrix, alpha: Sequence, *, on_shell: bool = True) -> bool:
    """Whole rank-one line ``h + t alpha alpha^t`` lies on ``F = 0``."""
    a = _covector(f, alpha)
    if on_shell:
        _require_on_equation(f, h)
    return restrict_line(f, h, a).is_zero()


def veronese(alpha: Sequence) -> SymMatrix:
    a = [to_rational(x) for x in alpha]
    n = len(a)
    return SymMatrix(n, [a[i] * a[j] for i in range(n) for j in range(i, n)])


def tangent_rank(v: SymMatrix) -> int:
    return rank(v.to_matrix())


def _check_ma_limits(f: PdePolynomial, max_n: int, max_degree: int) -> None:
    if f.n > max_n:
        raise LimitsExceeded(f"n={f.n} exceeds the Monge-Ampère test limit {max_n}")
    if f.degree() > max_degree:
        raise LimitsExceeded(f"degree {f.degree()} exceeds the limit {max_degree}")


def ma_test(f: PdePolynomial, max_n: int = MA_MAX_N, max_degree: int = MA_MAX_DEGREE) -> bool:
    """True iff the symmetrised second derivatives of F vanish identically.

    With ``T(a,b,c,d) = d^2F / dq_ab dq_cd`` the test is
    ``T(i,j,h,k) + T(i,h,j,k) + T(i,k,j,h) == 0`` for every index 4-tuple.
    That sum runs over the three pairings of the four slots and ``T`` is
    invariant under swaps within and between pairs, so it is a symmetric
    function of the tuple and sorted tuples suffice.
    """
    _check_ma_limits(f, max_n, max_degree)
    n = f.n
    first = {(i, j): diff(f, i, j) for i in range(1, n + 1) for j in range(i, n + 1)}
    second: dict[tuple[int, int, int, int], PdePolynomial] = {}

    def t(a, b, c, d):
        p, q = (min(a, b), max(a, b)), (min(c, d), max(c, d))
        if p > q:
            p, q = q, p
        key = p + q
        if key not in second:
            second[key] = diff(first[p], *q)
        return second[key]

    for i, j, h, k in combinations_with_replacement(range(1, n + 1), 4):
        if not (t(i, j, h, k) + t(i, h, j, k) + t(i, k, j, h)).is_zero():
            return False
    return True


def hyperplane_section(c: MaCoefficients) -> PdePolynomial:
    n = c.n
    out = PdePolynomial.constant(n, 0)
    for (i, j), v in c.items():
        if v:
            out = out + minor_polynomial(n, i, j) * v
    return out


@lru_cache(maxsize=None)
def _minor_solver(n: int):
    """Precomputed exact solver for ``sum c_k minor_k = F``.

    Returns (pivot columns, pivot monomials, inverse of the square system on
    them). Columns outside the pivots (the n = 4 relation) get coefficient 0.
    """
    idx = minor_indices(n)
    polys = [minor_polynomial(n, i, j) for i, j in idx]
    monos = sorted({m for p in polys for m in p.terms})
    basis = Matrix([[p.coefficient(m) for p in polys] for m in monos], len(idx))
    _, piv_cols = rref(basis)
    sub = basis.submatrix(range(len(monos)), piv_cols)
    _, piv_rows = rref(sub.T)
    square = sub.submatrix(piv_rows, range(len(piv_cols)))
    return tuple(piv_cols), tuple(monos[r] for r in piv_rows), inverse(square)


def ma_coefficients(f: PdePolynomial, max_n: int = MA_MAX_N) -> MaCoefficients:
    """Expand F in the minor basis, or raise :class:`NotMongeAmpere`."""
    n = f.n
    if n > max_n:
        raise LimitsExceeded(f"n={n} exceeds the limit {max_n}")
    if f.is_zero():
        raise AllZero("the zero polynomial defines no hypersurface")
    idx = minor_indices(n)
    cols, monos, inv = _minor_solver(n)
    rhs = [f.coefficient(m) for m in monos]
    sol = inv.apply(rhs)
    coeffs = {k: Fraction(0) for k in idx}
    for c, v in zip(cols, sol):
        coeffs[idx[c]] = v
    if all(v == 0 for v in coeffs.values()):
        raise NotMongeAmpere("F is not a combination of minors")
    out = MaCoefficients(n, coeffs)
    if hyperplane_section(out) != f:
        raise NotMongeAmpere("F is not a combination of minors")
    return out
