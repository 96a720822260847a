"""Big-cell points of LL(n, 2n), their Plücker vectors and relations.

A point of the big cell is a symmetric matrix ``h``; the plane it names is
the column span of the ``2n x n`` matrix ``(Id; h)``. Its Plücker vector is
the list of all minors ``minor(h; I, J)``, one per unordered pair of
equal-size subsets. All index sets are 1-based and strictly increasing.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import (
    AtInfinity,
    BadShape,
    BadSubset,
    DimensionTooLarge,
    NotSymmetric,
    UnsupportedAtInfinity,
)
from .exact import to_rational
from .linalg import Matrix, adjugate, canonical_subset, kernel_basis, minor, rank, rref

DEFAULT_MAX_N = 6

Subset = tuple[int, ...]
MinorIndex = tuple[Subset, Subset]


class SymMatrix:
    """Symmetric ``n x n`` matrix stored as its packed upper triangle."""

    __slots__ = ("n", "upper")

    def __init__(self, n: int, upper: Sequence):
        upper = tuple(to_rational(x) if isinstance(x, (int, str)) else x for x in upper)
        if len(upper) != n * (n + 1) // 2:
            raise BadShape(f"packed length {len(upper)} does not match n={n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "upper", upper)

    def __setattr__(self, name, val):
        raise AttributeError("SymMatrix is immutable")

    @staticmethod
    def _pos(n: int, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return i * n - i * (i - 1) // 2 + (j - i)

    @classmethod
    def from_matrix(cls, m: Matrix) -> "SymMatrix":
        if not m.is_square:
            raise BadShape(f"matrix of shape {m.shape} is not square")
        if not m.is_symmetric():
            raise NotSymmetric("matrix is not symmetric")
        n = m.rows
        return cls(n, [m[i, j] for i in range(n) for j in range(i, n)])

    @classmethod
    def from_rows(cls, rows) -> "SymMatrix":
        return cls.from_matrix(Matrix(rows))

    @classmethod
    def zeros(cls, n: int) -> "SymMatrix":
        return cls(n, [Fraction(0)] * (n * (n + 1) // 2))

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls.from_matrix(Matrix.identity(n))

    def __getitem__(self, ij):
        """0-based entry access; ``h[i, j] == h[j, i]``."""
        i, j = ij
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(ij)
        return self.upper[self._pos(self.n, i, j)]

    def to_matrix(self) -> Matrix:
        n = self.n
        return Matrix([[self[i, j] for j in range(n)] for i in range(n)], n)

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        if not isinstance(other, SymMatrix) or other.n != self.n:
            return NotImplemented
        return SymMatrix(self.n, [a + b for a, b in zip(self.upper, other.upper)])

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        if not isinstance(other, SymMatrix) or other.n != self.n:
            return NotImplemented
        return SymMatrix(self.n, [a - b for a, b in zip(self.upper, other.upper)])

    def __mul__(self, scalar) -> "SymMatrix":
        return SymMatrix(self.n, [a * scalar for a in self.upper])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.n == other.n and self.upper == other.upper

    def __hash__(self):
        return hash((self.n, self.upper))

    def __repr__(self):
        return f"SymMatrix({self.to_matrix().tolist()!r})"


def standard_symplectic(n: int) -> Matrix:
    """The matrix ``(0, -Id; Id, 0)`` of the symplectic form."""
    z, i = Matrix.zeros(n), Matrix.identity(n)
    return Matrix.block(z, -i, i, z)


class LagrangianPlane:
    """An n-plane in the 2n-dimensional symplectic space, by a column basis."""

    __slots__ = ("n", "basis")

    def __init__(self, basis: Matrix):
        if not is_lagrangian(basis):
            raise BadShape("basis does not span a Lagrangian plane")
        object.__setattr__(self, "n", basis.cols)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, val):
        raise AttributeError("LagrangianPlane is immutable")

    @classmethod
    def graph(cls, h: SymMatrix) -> "LagrangianPlane":
        return cls(graph_basis(h.to_matrix()))


def graph_basis(h: Matrix) -> Matrix:
    """``(Id; h)``: the columns span the graph of ``h``."""
    return Matrix.vstack(Matrix.identity(h.rows), h)


def is_lagrangian(basis: Matrix) -> bool:
    n = basis.cols
    if basis.rows != 2 * n or n == 0:
        raise BadShape(f"expected a 2n x n basis, got {basis.shape}")
    if rank(basis) != n:
        return False
    return (basis.T @ standard_symplectic(n) @ basis).is_zero()


def plane_intersection(p: Matrix, q: Matrix) -> list[list[Fraction]]:
    """Basis of ``colspan(p) ∩ colspan(q)`` (vectors in the ambient space)."""
    if p.rows != q.rows:
        raise BadShape("planes live in different ambient spaces")
    joined = Matrix([list(a) + [-x for x in b] for a, b in zip(p.entries, q.entries)])
    vecs = [p.apply(k[: p.cols]) for k in kernel_basis(joined)]
    if not vecs:
        return []
    # the kernel may be redundant when p has dependent columns
    r, piv = rref(Matrix(vecs))
    return [list(r.row(i)) for i in range(len(piv))]


@lru_cache(maxsize=None)
def minor_indices(n: int) -> tuple[MinorIndex, ...]:
    """Canonical minor index pairs: by order, then lexicographic ``(I, J)``, ``I <= J``."""
    out: list[MinorIndex] = []
    for k in range(n + 1):
        subsets = list(combinations(range(1, n + 1), k))
        for a, i in enumerate(subsets):
            for j in subsets[a:]:
                out.append((i, j))
    return tuple(out)


def canonical_pair(rows: Iterable[int], cols: Iterable[int], n: int) -> MinorIndex:
    i = canonical_subset(rows, n)
    j = canonical_subset(cols, n)
    if len(i) != len(j):
        raise BadSubset("subsets of different sizes")
    return (i, j) if i <= j else (j, i)


class PluckerVector:
    """All minors of a big-cell point (or any projective vector with that index set)."""

    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords: Mapping[MinorIndex, object]):
        idx = minor_indices(n)
        normalized = {}
        for (i, j), v in coords.items():
            key = canonical_pair(i, j, n)
            if key in normalized:
                raise BadShape(f"coordinate {key} given twice")
            normalized[key] = to_rational(v) if isinstance(v, (int, str)) else v
        if set(normalized) != set(idx):
            raise BadShape(f"Plücker vector for n={n} needs exactly {len(idx)} coordinates")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coords", {k: normalized[k] for k in idx})

    def __setattr__(self, name, val):
        raise AttributeError("PluckerVector is immutable")

    @classmethod
    def from_values(cls, n: int, values: Sequence) -> "PluckerVector":
        idx = minor_indices(n)
        if len(values) != len(idx):
            raise BadShape(f"expected {len(idx)} values, got {len(values)}")
        return cls(n, dict(zip(idx, values)))

    def __getitem__(self, pair) -> Fraction:
        i, j = pair
        return self.coords[canonical_pair(i, j, self.n)]

    @property
    def z0(self):
        return self.coords[((), ())]

    def values(self) -> list:
        return list(self.coords.values())

    def items(self) -> Iterator[tuple[MinorIndex, object]]:
        return iter(self.coords.items())

    def scaled(self, lam) -> "PluckerVector":
        return PluckerVector(self.n, {k: v * lam for k, v in self.coords.items()})

    def __eq__(self, other):
        if not isinstance(other, PluckerVector):
            return NotImplemented
        return self.n == other.n and self.coords == other.coords

    def __hash__(self):
        return hash((self.n, tuple(self.coords.values())))

    def __repr__(self):
        return f"PluckerVector(n={self.n}, {[str(v) for v in self.values()]})"


class EmbeddingDims(NamedTuple):
    raw_minor_count: int
    embedding_dim: int
    exact: bool  # False when linear relations among minors are unknown here


def raw_minor_count(n: int) -> int:
    return sum(comb(n, k) * (comb(n, k) + 1) // 2 for k in range(n + 1))


def embedding_dims(n: int) -> EmbeddingDims:
    if n < 1:
        raise BadShape("n must be positive")
    raw = raw_minor_count(n)
    if n <= 3:
        return EmbeddingDims(raw, raw, True)
    if n == 4:
        return EmbeddingDims(raw, raw - 1, True)
    return EmbeddingDims(raw, raw, False)


def plucker(h: SymMatrix, max_n: int = DEFAULT_MAX_N) -> PluckerVector:
    if h.n < 1:
        raise BadShape("n must be positive")
    if h.n > max_n:
        raise DimensionTooLarge(f"n={h.n} exceeds the limit {max_n}")
    m = h.to_matrix()
    return PluckerVector(h.n, {(i, j): minor(m, i, j) for i, j in minor_indices(h.n)})


def reconstruct_big_cell(v: PluckerVector) -> SymMatrix:
    z0 = v.z0
    if z0 == 0:
        raise AtInfinity("z0 = 0: the point is not in the big cell")
    n = v.n
    return SymMatrix(n, [v[(i + 1,), (j + 1,)] / z0 for i in range(n) for j in range(i, n)])


def quadric_n2(v: PluckerVector):
    """``z1 z3 - z2^2 - z0 z4`` for n = 2."""
    z = v.values()
    return z[1] * z[3] - z[2] ** 2 - z[0] * z[4]


def cofactor_coordinates(v: PluckerVector) -> list:
    """The n = 3 vector in the layout ``(1, h_ij, h#_ij, det h)`` with i <= j.

    Minors are converted to signed cofactors ``h#_ij = (-1)^(i+j) minor(h; î, ĵ)``.
    """
    if v.n != 3:
        raise BadShape("cofactor layout is defined for n = 3")
    full = (1, 2, 3)

    def comp(i):
        return tuple(x for x in full if x != i)

    pairs = [(i, j) for i in full for j in full if i <= j]
    z = [v.z0]
    z += [v[(i,), (j,)] for i, j in pairs]
    z += [(-1) ** (i + j) * v[comp(i), comp(j)] for i, j in pairs]
    z.append(v[full, full])
    return z


def relations_n3(v: PluckerVector) -> list:
    """Residuals of the seven quadrics cutting out LL(3,6).

    With ``Z`` the symmetric matrix of ``z1..z6`` and ``W`` the one of the
    cofactor slots ``z7..z12``: ``z0 W_ij - (Z#)_ij`` for the six entries,
    and ``3 z0 z13 - tr(Z W)`` (on the big cell ``tr(h h#) = 3 det h``).
    """
    z = cofactor_coordinates(v)

    def sym(vals):
        a, b, c, d, e, f = vals
        return Matrix([[a, b, c], [b, d, e], [c, e, f]])

    big_z = sym(z[1:7])
    w = sym(z[7:13])
    zs = adjugate(big_z)
    res = [z[0] * w[i, j] - zs[i, j] for i in range(3) for j in range(i, 3)]
    zw = big_z @ w
    res.append(3 * z[0] * z[13] - (zw[0, 0] + zw[1, 1] + zw[2, 2]))
    return res


def linear_relation_n4(v: PluckerVector):
    """The order-2 minor combination that vanishes on LL(4,8)."""
    if v.n != 4:
        raise BadShape("the linear minor relation is defined for n = 4")
    return -v[(1, 2), (3, 4)] + v[(1, 3), (2, 4)] - v[(1, 4), (2, 3)]


def _reconstruction_consistent(v: PluckerVector) -> bool:
    h = reconstruct_big_cell(v)
    return plucker(h, max_n=v.n).scaled(v.z0) == v


def check_relations(v: PluckerVector) -> bool:
    n = v.n
    if n == 1:
        return True
    if n == 2:
        return quadric_n2(v) == 0
    if n == 3:
        return all(r == 0 for r in relations_n3(v))
    if n == 4 and linear_relation_n4(v) != 0:
        return False
    if v.z0 == 0:
        raise UnsupportedAtInfinity(
            f"no complete relation set for n={n} at z0 = 0 beyond the linear relation"
        )
    return _reconstruction_consistent(v)
