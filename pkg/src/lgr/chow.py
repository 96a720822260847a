"""Goursat-type equations det(p - D) = 0 and low-dimensional duality."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import AllZero, BadShape, LimitsExceeded, NotInvertible, OrthogonalNotInBigCell, WrongDimension
from .lag_grassmann import SymMatrix, graph_basis, standard_symplectic
from .linalg import Matrix, adjugate, det, det_expansion, inverse, kernel_basis
from .pde_analysis import MaCoefficients, hyperplane_section, symbol
from .pde_poly import PdePolynomial, evaluate, symbolic_p

CHOW_MAX_N = 5


@dataclass(frozen=True)
class ChowSubspace:
    """An n-dimensional subspace given by its big-cell matrix (any square D)."""

    D: Matrix

    def __post_init__(self):
        if not self.D.is_square or self.D.rows == 0:
            raise BadShape(f"D must be a nonempty square matrix, got {self.D.shape}")

    @property
    def n(self) -> int:
        return self.D.rows


def chow_transform(sub: ChowSubspace, max_n: int = CHOW_MAX_N) -> PdePolynomial:
    """``det(p - D)`` as a polynomial in the ``p_ij``."""
    n = sub.n
    if n > max_n:
        raise LimitsExceeded(f"n={n} exceeds the limit {max_n}")
    p = symbolic_p(n)
    return det_expansion(p - sub.D.map(lambda x: PdePolynomial.constant(n, x)))


def symplectic_orthogonal(sub: ChowSubspace) -> ChowSubspace:
    """The ω-orthogonal of ``span(Id; D)``, re-expressed in the big cell.

    Computed as the kernel of ``w -> ω(v_k, w)`` over the basis columns
    ``v_k`` of the graph, never from a closed formula.
    """
    n = sub.n
    basis = graph_basis(sub.D)
    pairing = basis.T @ standard_symplectic(n)
    kern = kernel_basis(pairing)
    if len(kern) != n:
        raise OrthogonalNotInBigCell("orthogonal has unexpected dimension")
    k = Matrix(kern).T
    top = k.submatrix(range(n), range(n))
    bottom = k.submatrix(range(n, 2 * n), range(n))
    try:
        top_inv = inverse(top)
    except NotInvertible:
        raise OrthogonalNotInBigCell("the orthogonal has no big-cell representative") from None
    return ChowSubspace(bottom @ top_inv)


def proportional(f: PdePolynomial, g: PdePolynomial) -> bool:
    """``f == lambda g`` for some nonzero rational lambda."""
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    ft, gt = f.terms, g.terms
    if ft.keys() != gt.keys():
        return False
    m = next(iter(ft))
    lam = ft[m] / gt[m]
    return all(ft[k] == lam * gt[k] for k in ft)


def chow_invariance_check(sub: ChowSubspace) -> bool:
    """Whether D and its symplectic orthogonal give the same hypersurface."""
    return proportional(chow_transform(sub), chow_transform(symplectic_orthogonal(sub)))


class GoursatCoefficients(NamedTuple):
    A: Fraction
    B: Fraction
    C: Fraction
    Delta: Fraction
    E: Fraction


def _read_2d(f: PdePolynomial) -> GoursatCoefficients:
    # p-variable order for n = 2: (p11, p12, p22)
    e = f.coefficient((1, 0, 1))
    if f.coefficient((0, 2, 0)) != -e:
        raise ValueError("not of the form E det(p) + linear")
    return GoursatCoefficients(
        A=f.coefficient((1, 0, 0)),
        B=f.coefficient((0, 1, 0)) / 2,
        C=f.coefficient((0, 0, 1)),
        Delta=f.constant_term(),
        E=e,
    )


def quadric_discriminant(k: GoursatCoefficients) -> Fraction:
    """``AC - Delta E - B^2``."""
    return k.A * k.C - k.Delta * k.E - k.B**2


def goursat_indicator_2d(sub: ChowSubspace) -> tuple[Fraction, GoursatCoefficients]:
    """Read ``E det p + A p11 + 2B p12 + C p22 + Delta`` off ``det(p - D)``."""
    if sub.n != 2:
        raise WrongDimension("the Goursat indicator is defined for n = 2")
    coeffs = _read_2d(chow_transform(sub))
    return quadric_discriminant(coeffs), coeffs


def ma_class_coefficients_2d(c: MaCoefficients) -> GoursatCoefficients:
    if c.n != 2:
        raise WrongDimension("expected n = 2 coefficients")
    return GoursatCoefficients(
        A=c[(1,), (1,)],
        B=c[(1,), (2,)] / 2,
        C=c[(2,), (2,)],
        Delta=c[(), ()],
        E=c[(1, 2), (1, 2)],
    )


def dual_quadric_class_2d(c: MaCoefficients) -> str:
    """Type of a 2D Monge-Ampère hyperplane by the sign of ``AC - Delta E - B^2``."""
    if all(v == 0 for v in c.values()):
        raise AllZero("zero hyperplane")
    disc = quadric_discriminant(ma_class_coefficients_2d(c))
    if disc == 0:
        return "parabolic"
    return "elliptic" if disc > 0 else "hyperbolic"


def dual_tangent_hyperplane_3d(h: SymMatrix) -> MaCoefficients:
    """Hyperplane tangent to LL(3,6) at ``H``, with section ``det(h - H)``.

    ``det(h - H) = det h - tr(h# H) + tr(h H#) - det H``, so the constant
    slot holds ``-det H``, the order-1 slots ``H#``, the order-2 slots the
    entries of ``H`` (converted from cofactors to minors) and the top slot 1.
    Off-diagonal slots carry a factor 2 because ``{I, J}`` and ``{J, I}``
    share one coordinate.
    """
    if h.n != 3:
        raise WrongDimension("the tangent hyperplane construction is for n = 3")
    hm = h.to_matrix()
    adj_h = adjugate(hm)
    full = (1, 2, 3)

    def comp(i):
        return tuple(x for x in full if x != i)

    coeffs: dict = {((), ()): -det(hm), (full, full): Fraction(1)}
    for i in full:
        for j in full:
            if i > j:
                continue
            mult = 1 if i == j else 2
            coeffs[(i,), (j,)] = mult * adj_h[i - 1, j - 1]
            # h#_ij = (-1)^(i+j) minor(h; comp i, comp j)
            coeffs[comp(i), comp(j)] = -mult * (-1) ** (i + j) * hm[i - 1, j - 1]
    return MaCoefficients(3, coeffs)


class TangencyReport(NamedTuple):
    value: Fraction
    symbol_zero: bool


def tangency_report(c: MaCoefficients, h: SymMatrix) -> TangencyReport:
    f = hyperplane_section(c)
    return TangencyReport(evaluate(f, h), symbol(f, h).S.is_zero())
