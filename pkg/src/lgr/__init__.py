"""Exact computations on the Lagrangian Grassmannian and symplectic second-order PDEs."""

from .chow import (
    ChowSubspace,
    chow_invariance_check,
    chow_transform,
    dual_quadric_class_2d,
    dual_tangent_hyperplane_3d,
    goursat_indicator_2d,
    symplectic_orthogonal,
    tangency_report,
)
from .errors import DomainError, InputError, LgrError
from .exact import DualRational, Rational, format_rational, parse_rational, rat_ops, to_rational
from .lag_grassmann import (
    LagrangianPlane,
    PluckerVector,
    SymMatrix,
    check_relations,
    embedding_dims,
    plucker,
    reconstruct_big_cell,
)
from .linalg import Matrix, det, inverse, kernel_basis, minor, rank, signature
from .parser import format_pde, parse_pde
from .pde_analysis import (
    MaCoefficients,
    classify_at,
    hyperplane_section,
    is_characteristic,
    is_strong_characteristic,
    ma_coefficients,
    ma_test,
    symbol,
    tangent_rank,
    veronese,
)
from .pde_poly import PdePolynomial, diff, evaluate, from_p_variables, restrict_line
from .symplectic import (
    SpAlgebraElement,
    SymplecticMatrix,
    action,
    action_slope,
    generator,
    infinitesimal_action,
    is_symplectic,
)

__version__ = "0.1.0"
