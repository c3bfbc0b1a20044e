"""Waring decompositions of homogeneous polynomials and the singularities of
the hypersurfaces they define."""

from .errors import CheckMismatch, NonReducedError, PreconditionError, WaringError
from .poly import Poly, hessian_det
from .scalars import QQi
from .waring import (
    CanonicalForm,
    LinearForm,
    WaringDecomposition,
    arrangement_combinatorics,
    binary_rank_lower_bound,
    canonicalize_rank_np1,
    dual_point,
    expand,
    is_essential,
    recover_k_via_hessian,
)
from .singular import (
    SingularityReport,
    SystemS,
    analyze_rank_np1,
    classify_plane_singularity,
    corank_at,
    fermat_section_check,
    local_milnor,
    plane_singular_points,
    solve_system_S,
)
from .resultants import R2_eval, R2_poly, R3_eval_d3, common_root_count, sylvester_system_k2
from .families import (
    CayleySpec,
    Rank5Shape,
    cayley_expected_nodes,
    cayley_form,
    rank5_form,
    suspension_components,
    t3_conditions,
    unit_circle_check,
    verify_cayley_curve,
)

__version__ = "0.1.0"

__all__ = [
    "CheckMismatch",
    "NonReducedError",
    "PreconditionError",
    "WaringError",
    "Poly",
    "hessian_det",
    "QQi",
    "CanonicalForm",
    "LinearForm",
    "WaringDecomposition",
    "arrangement_combinatorics",
    "binary_rank_lower_bound",
    "canonicalize_rank_np1",
    "dual_point",
    "expand",
    "is_essential",
    "recover_k_via_hessian",
    "SingularityReport",
    "SystemS",
    "analyze_rank_np1",
    "classify_plane_singularity",
    "corank_at",
    "fermat_section_check",
    "local_milnor",
    "plane_singular_points",
    "solve_system_S",
    "R2_eval",
    "R2_poly",
    "R3_eval_d3",
    "common_root_count",
    "sylvester_system_k2",
    "CayleySpec",
    "Rank5Shape",
    "cayley_expected_nodes",
    "cayley_form",
    "rank5_form",
    "suspension_components",
    "t3_conditions",
    "unit_circle_check",
    "verify_cayley_curve",
]
