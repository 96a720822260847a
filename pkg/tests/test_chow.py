from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lgr.chow import (
    ChowSubspace,
    chow_invariance_check,
    chow_transform,
    dual_quadric_class_2d,
    dual_tangent_hyperplane_3d,
    goursat_indicator_2d,
    proportional,
    symplectic_orthogonal,
    tangency_report,
)
from lgr.errors import AllZero, BadShape, LimitsExceeded, WrongDimension
from lgr.lag_grassmann import SymMatrix, graph_basis, standard_symplectic
from lgr.linalg import Matrix, det
from lgr.parser import parse_pde
from lgr.pde_analysis import MaCoefficients, hyperplane_section, ma_coefficients, ma_test, symbol
from lgr.pde_poly import det_p, evaluate

from conftest import matrices, sym_matrices


def test_chow_examples():
    assert chow_transform(ChowSubspace(Matrix.zeros(3))) == det_p(3)
    got = chow_transform(ChowSubspace(Matrix([[0, 1], [0, 0]])))
    assert got == parse_pde("p11*p22 - p12^2 + p12", 2)


def test_chow_n3_oracle():
    # expanded by sympy
    d = Matrix([[1, 2, 0], [-1, 0, 3], [Q(1, 2), 0, 1]])
    expected = parse_pde(
        "p11*p22*p33 - p11*p22 - p11*p23^2 + 3*p11*p23 - p12^2*p33 + p12^2 + 2*p12*p13*p23"
        " - 3*p12*p13 - 1/2*p12*p23 + p12*p33 + 1/2*p12 - p13^2*p22 + 1/2*p13*p22 - p13*p23"
        " + 6*p13 - p22*p33 + p22 + p23^2 - 2*p23 + 2*p33 - 5",
        3,
    )
    assert chow_transform(ChowSubspace(d)) == expected


def test_chow_limits_and_shape():
    with pytest.raises(LimitsExceeded):
        chow_transform(ChowSubspace(Matrix.zeros(6)))
    with pytest.raises(BadShape):
        ChowSubspace(Matrix([[1, 2]]))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_chow_is_monge_ampere(n):
    @given(matrices(n, bound=4))
    def run(d):
        f = chow_transform(ChowSubspace(d))
        assert ma_test(f)
        assert f.degree() == n

    run()


def test_symmetric_chow_is_tangent_section():
    h = SymMatrix.from_rows([[2, 1, 0], [1, -1, 3], [0, 3, 5]])
    assert chow_transform(ChowSubspace(h.to_matrix())) == hyperplane_section(dual_tangent_hyperplane_3d(h))


def test_goursat_examples():
    ind, k = goursat_indicator_2d(ChowSubspace(Matrix([[0, 1], [0, 0]])))
    assert ind == Q(-1, 4)
    assert tuple(k) == (0, Q(1, 2), 0, 0, 1)
    ind, _ = goursat_indicator_2d(ChowSubspace(Matrix([[1, 2], [2, 3]])))
    assert ind == 0
    ind, k = goursat_indicator_2d(ChowSubspace(Matrix.zeros(2)))
    assert ind == 0 and tuple(k) == (0, 0, 0, 0, 1)
    with pytest.raises(WrongDimension):
        goursat_indicator_2d(ChowSubspace(Matrix.zeros(3)))


@given(matrices(2))
def test_goursat_identity(d):
    ind, k = goursat_indicator_2d(ChowSubspace(d))
    assert ind == -((d[0, 1] - d[1, 0]) / 2) ** 2
    assert (ind == 0) == d.is_symmetric()
    assert (k.A, 2 * k.B, k.C, k.Delta, k.E) == (-d[1, 1], d[0, 1] + d[1, 0], -d[0, 0], det(d), 1)
    cls = dual_quadric_class_2d(ma_coefficients(chow_transform(ChowSubspace(d))))
    assert cls == ("parabolic" if d.is_symmetric() else "hyperbolic")


def test_dual_quadric_examples():
    assert dual_quadric_class_2d(ma_coefficients(parse_pde("p11 + p22", 2))) == "elliptic"
    assert dual_quadric_class_2d(ma_coefficients(parse_pde("p11 - p22", 2))) == "hyperbolic"
    assert dual_quadric_class_2d(ma_coefficients(parse_pde("det(p) - p11 - 2*p12 - 3*p22 + 2", 2))) == "parabolic"
    assert dual_quadric_class_2d(ma_coefficients(parse_pde("det(p) - p11 - 2*p12 - 3*p22 + 5", 2))) == "hyperbolic"
    h = Matrix([[1, 2], [2, 3]])
    assert dual_quadric_class_2d(ma_coefficients(chow_transform(ChowSubspace(h)))) == "parabolic"
    with pytest.raises(WrongDimension):
        dual_quadric_class_2d(MaCoefficients(3, {((), ()): 1}))


def test_orthogonal_examples():
    d = Matrix([[1, 2], [2, 3]])
    assert symplectic_orthogonal(ChowSubspace(d)).D == d
    assert chow_invariance_check(ChowSubspace(Matrix([[0, 1], [0, 0]])))


@given(st.integers(1, 3).flatmap(matrices))
def test_orthogonal_is_transpose_and_pairs_to_zero(d):
    orth = symplectic_orthogonal(ChowSubspace(d))
    assert orth.D == d.T
    pairing = graph_basis(d).T @ standard_symplectic(d.rows) @ graph_basis(orth.D)
    assert pairing.is_zero()


@given(matrices(2))
def test_invariance_random(d):
    assert chow_invariance_check(ChowSubspace(d))


def test_proportional():
    f = det_p(2) + 1
    assert proportional(f * Q(-3, 2), f)
    assert not proportional(f, det_p(2))


def test_dual3_examples():
    zero = SymMatrix.zeros(3)
    c = dual_tangent_hyperplane_3d(zero)
    assert hyperplane_section(c) == det_p(3)
    assert tangency_report(c, zero) == (0, True)
    ident = SymMatrix.identity(3)
    c = dual_tangent_hyperplane_3d(ident)
    assert c[(), ()] == -1 and c[(1, 2, 3), (1, 2, 3)] == 1
    assert tangency_report(c, ident) == (0, True)
    with pytest.raises(WrongDimension):
        dual_tangent_hyperplane_3d(SymMatrix.zeros(2))


@given(sym_matrices(3))
def test_dual3_tangency(h):
    c = dual_tangent_hyperplane_3d(h)
    f = hyperplane_section(c)
    assert f == chow_transform(ChowSubspace(h.to_matrix()))
    assert evaluate(f, h) == 0
    assert symbol(f, h).S.is_zero()
    assert ma_test(f)


def test_all_zero_hyperplane():
    with pytest.raises(AllZero):
        MaCoefficients(2, {((), ()): 0})
