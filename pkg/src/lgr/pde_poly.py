"""Exact polynomials F(p_ij) in the big-cell coordinates.

Derivatives with respect to entries of a symmetric matrix are fixed by one
convention: F is regarded as a function of the full n x n grid ``q_ij`` via
``p_ii = q_ii`` and ``p_ij = (q_ij + q_ji) / 2`` for ``i < j``. Every
polynomial reachable through this module is therefore invariant under
``q_ij <-> q_ji``, and it is stored by its coefficients in the ``p_ij``
(``i <= j``) monomials. :meth:`PdePolynomial.to_q_terms` expands the
explicit grid form, and :func:`diff` is ``d/dq_ij`` on that form:
``dF/dq_ii = dF/dp_ii`` and ``dF/dq_ij = (1/2) dF/dp_ij`` off the diagonal.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import BadIndex, DimensionMismatch, LimitsExceeded, NotSymmetric, ZeroCovector
from .exact import to_rational
from .lag_grassmann import SymMatrix
from .linalg import Matrix, det_expansion

MAX_TERMS = 200_000

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def p_variables(n: int) -> tuple[tuple[int, int], ...]:
    """1-based ``(i, j)``, ``i <= j``, in row-major order of the upper triangle."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(i, n + 1))


def var_index(n: int, i: int, j: int) -> int:
    """Position of ``p_ij`` (either index order) among :func:`p_variables`."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise BadIndex(f"index ({i}, {j}) out of range for n={n}")
    if i > j:
        i, j = j, i
    i0 = i - 1
    return i0 * n - i0 * (i0 - 1) // 2 + (j - i)


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class PdePolynomial:
    """Immutable polynomial with rational coefficients in the ``p_ij``."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        nv = n * (n + 1) // 2
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nv or any(e < 0 for e in mono):
                raise BadIndex(f"bad exponent vector {mono!r} for n={n}")
            c = to_rational(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, val):
        raise AttributeError("PdePolynomial is immutable")

    @classmethod
    def _raw(cls, n: int, terms: dict[Monomial, Fraction]) -> "PdePolynomial":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def constant(cls, n: int, c=0) -> "PdePolynomial":
        c = to_rational(c)
        nv = n * (n + 1) // 2
        return cls._raw(n, {(0,) * nv: c} if c else {})

    @classmethod
    def variable(cls, n: int, i: int, j: int) -> "PdePolynomial":
        """``p_ij`` (1-based, ``i <= j`` required)."""
        if i > j:
            raise BadIndex(f"p_{i}{j}: variables are named with i <= j")
        k = var_index(n, i, j)
        mono = [0] * (n * (n + 1) // 2)
        mono[k] = 1
        return cls._raw(n, {tuple(mono): Fraction(1)})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items_grlex(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order (``p11 > p12 > ... > pnn``)."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * (self.n * (self.n + 1) // 2), Fraction(0))

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def _coerce(self, other) -> "PdePolynomial | None":
        if isinstance(other, PdePolynomial):
            if other.n != self.n:
                raise DimensionMismatch(f"n={self.n} vs n={other.n}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return PdePolynomial.constant(self.n, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return PdePolynomial._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return PdePolynomial._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            if not c:
                return PdePolynomial._raw(self.n, {})
            return PdePolynomial._raw(self.n, {m: v * c for m, v in self._terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(self._terms) * len(o._terms) > MAX_TERMS * 4:
            raise LimitsExceeded("polynomial product too large")
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        if len(out) > MAX_TERMS:
            raise LimitsExceeded("polynomial has too many terms")
        return PdePolynomial._raw(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = PdePolynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = PdePolynomial.constant(self.n, other)
        if not isinstance(other, PdePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.n, frozenset(self._terms.items()))))
        return self._hash

    def __str__(self):
        from .parser import format_pde

        return format_pde(self)

    def __repr__(self):
        return f"PdePolynomial(n={self.n}, {str(self)!r})"

    def to_q_terms(self) -> dict[tuple[int, ...], Fraction]:
        """Explicit expansion over the n*n grid ``q`` (row-major exponents)."""
        n = self.n
        half = Fraction(1, 2)
        var_q: list[dict[tuple[int, ...], Fraction]] = []
        for i, j in p_variables(n):
            a = [0] * (n * n)
            a[(i - 1) * n + (j - 1)] = 1
            if i == j:
                var_q.append({tuple(a): Fraction(1)})
            else:
                b = [0] * (n * n)
                b[(j - 1) * n + (i - 1)] = 1
                var_q.append({tuple(a): half, tuple(b): half})

        def mul(x, y):
            out: dict[tuple[int, ...], Fraction] = {}
            for m1, c1 in x.items():
                for m2, c2 in y.items():
                    m = tuple(u + v for u, v in zip(m1, m2))
                    out[m] = out.get(m, 0) + c1 * c2
            return {m: c for m, c in out.items() if c}

        total: dict[tuple[int, ...], Fraction] = {}
        for mono, c in self._terms.items():
            acc = {(0,) * (n * n): c}
            for k, e in enumerate(mono):
                for _ in range(e):
                    acc = mul(acc, var_q[k])
            for m, v in acc.items():
                total[m] = total.get(m, 0) + v
        return {m: c for m, c in total.items() if c}


def from_p_variables(n: int, expr: Mapping[Sequence[tuple[int, int]], object]) -> PdePolynomial:
    """Build F from ``{((i, j), (k, l), ...): coeff}``; each key lists the p-factors.

    Indices are 1-based with ``i <= j``; repeated factors give powers and
    the empty tuple is the constant term.
    """
    nv = n * (n + 1) // 2
    terms: dict[Monomial, Fraction] = {}
    for factors, c in expr.items():
        mono = [0] * nv
        for pair in factors:
            i, j = pair
            if i > j:
                raise BadIndex(f"p_{i}{j}: use i <= j")
            mono[var_index(n, i, j)] += 1
        key = tuple(mono)
        terms[key] = terms.get(key, Fraction(0)) + to_rational(c)
    return PdePolynomial(n, terms)


def _check_index(f: PdePolynomial, i: int, j: int) -> int:
    if not (1 <= i <= f.n and 1 <= j <= f.n):
        raise BadIndex(f"index ({i}, {j}) out of range for n={f.n}")
    return var_index(f.n, i, j)


def diff(f: PdePolynomial, i: int, j: int) -> PdePolynomial:
    """``dF/dq_ij`` (1-based); symmetric in ``i``, ``j``."""
    k = _check_index(f, i, j)
    weight = Fraction(1) if i == j else Fraction(1, 2)
    out: dict[Monomial, Fraction] = {}
    for mono, c in f._terms.items():
        e = mono[k]
        if e:
            m = list(mono)
            m[k] -= 1
            out[tuple(m)] = c * e * weight
    return PdePolynomial._raw(f.n, out)


def substitute(f: PdePolynomial, values: Sequence):
    """Evaluate F with ``p_ij := values[var_index(i, j)]`` in any commutative ring."""
    nv = f.n * (f.n + 1) // 2
    if len(values) != nv:
        raise DimensionMismatch(f"expected {nv} values, got {len(values)}")
    powers: dict[tuple[int, int], object] = {}

    def pw(k, e):
        key = (k, e)
        if key not in powers:
            powers[key] = values[k] if e == 1 else pw(k, e - 1) * values[k]
        return powers[key]

    acc = None
    for mono, c in f._terms.items():
        term = None
        for k, e in enumerate(mono):
            if e:
                x = pw(k, e)
                term = x if term is None else term * x
        term = c if term is None else c * term
        acc = term if acc is None else acc + term
    if acc is None:
        zero = values[0] * 0 if values else Fraction(0)
        return zero
    return acc


def _matrix_values(n: int, h) -> list:
    if isinstance(h, SymMatrix):
        if h.n != n:
            raise DimensionMismatch(f"polynomial has n={n}, point has n={h.n}")
        return [h[i - 1, j - 1] for i, j in p_variables(n)]
    if isinstance(h, Matrix):
        if h.shape != (n, n):
            raise DimensionMismatch(f"polynomial has n={n}, matrix is {h.shape}")
        if not h.is_symmetric():
            raise NotSymmetric("evaluation point must be symmetric")
        return [h[i - 1, j - 1] for i, j in p_variables(n)]
    raise TypeError("expected a SymMatrix")


def evaluate(f: PdePolynomial, h) -> Fraction:
    """``F(h)``; entries of ``h`` may be rationals, dual rationals or polynomials."""
    return substitute(f, _matrix_values(f.n, h))


def compose_sym(f: PdePolynomial, s: Matrix) -> PdePolynomial:
    """``F(S(p))`` where ``S`` is a symmetric matrix of polynomials in ``p``."""
    out = substitute(f, _matrix_values(f.n, s))
    if not isinstance(out, PdePolynomial):
        out = PdePolynomial.constant(f.n, out)
    return out


@lru_cache(maxsize=None)
def symbolic_p(n: int) -> Matrix:
    """The n x n matrix whose ``(i, j)`` entry is ``p_min(i,j) max(i,j)``."""
    return Matrix(
        [[PdePolynomial.variable(n, min(i, j), max(i, j)) for j in range(1, n + 1)] for i in range(1, n + 1)],
        n,
    )


def det_p(n: int) -> PdePolynomial:
    return det_expansion(symbolic_p(n))


def trace_p(n: int) -> PdePolynomial:
    return sum((PdePolynomial.variable(n, i, i) for i in range(1, n + 1)), PdePolynomial.constant(n, 0))


@lru_cache(maxsize=None)
def minor_polynomial(n: int, rows: tuple[int, ...], cols: tuple[int, ...]) -> PdePolynomial:
    """``minor(p; rows, cols)`` expanded (1-based subsets)."""
    if len(rows) != len(cols):
        raise BadIndex("minor subsets must have equal size")
    if not rows:
        return PdePolynomial.constant(n, 1)
    sub = symbolic_p(n).submatrix([i - 1 for i in rows], [j - 1 for j in cols])
    return det_expansion(sub)


class UnivariatePolynomial:
    """Polynomial in one variable ``t``; ``coeffs[k]`` multiplies ``t**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = [to_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, val):
        raise AttributeError("UnivariatePolynomial is immutable")

    @classmethod
    def t(cls) -> "UnivariatePolynomial":
        return cls((0, 1))

    def _coerce(self, other):
        if isinstance(other, UnivariatePolynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return UnivariatePolynomial((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        m = max(len(a), len(b))
        return UnivariatePolynomial(
            [(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(m)]
        )

    __radd__ = __add__

    def __neg__(self):
        return UnivariatePolynomial([-x for x in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return UnivariatePolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UnivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = UnivariatePolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def derivative(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UnivariatePolynomial({[str(c) for c in self.coeffs]})"


def restrict_line(f: PdePolynomial, h: SymMatrix, alpha: Sequence) -> UnivariatePolynomial:
    """``t -> F(h + t alpha alpha^t)``: F along the rank-one line through ``h``."""
    alpha = [to_rational(a) for a in alpha]
    if len(alpha) != f.n:
        raise DimensionMismatch(f"covector has length {len(alpha)}, expected {f.n}")
    if all(a == 0 for a in alpha):
        raise ZeroCovector("alpha must be nonzero")
    vals = _matrix_values(f.n, h)
    line = [
        UnivariatePolynomial((v, alpha[i - 1] * alpha[j - 1]))
        for v, (i, j) in zip(vals, p_variables(f.n))
    ]
    out = substitute(f, line)
    if not isinstance(out, UnivariatePolynomial):
        out = UnivariatePolynomial((out,))
    return out
