"""Exact combinatorial reduction of finite minimal supports to monomial type.

The package models manifolds whose charts differ by pure monomial maps as
label-indexed exact rational data (corner index sets plus edge exponent
matrices), blows up codimension-two boundary strata with adapted weight
families, and principalizes finitely generated monomial ideals, emitting
replayable blow-up traces.
"""

from .errors import (
    AlgorithmInvariantViolation,
    BudgetExceededError,
    ConnectivityError,
    DomainError,
    MonoresError,
    NotEffectiveError,
    SingularMatrixError,
    StructuralError,
    ZeroSeriesError,
)
from .linalg import (
    ExponentMatrix,
    ExponentVector,
    Rat,
    div_le,
    format_rational,
    hadamard,
    mat_inverse,
    mat_mul,
    minimal_elements,
    parse_rational,
    vec_apply,
)
from .supports import (
    FiniteSeries,
    SupportSet,
    minimal_support,
    monomial_complexity,
    project_support,
    pullback_support,
    rescale_support,
    support_from_rows,
)
from .manifold import (
    Corner,
    Edge,
    MonomialManifold,
    make_corner,
    next_exceptional_label,
)
from .standardization import (
    GlobalStandardization,
    LocalStandardization,
    extend,
    validate_realizable,
)
from .blowup import (
    BlowupCenter,
    BlowupStep,
    Star,
    apply_center,
    blow_up,
    compose_star,
    pullback_vector,
)
from .ideals import (
    DEFAULT_STEP_BUDGET,
    MFunction,
    MIdeal,
    PairState,
    PrincipalizationRun,
    adapted_standardization,
    center_is_uncoupled_at,
    is_locally_principal,
    local_min_data,
    mfunction_from_corner,
    principalize,
    principalize_generators,
    principalize_pair,
    pull_back_mfunction,
    uncoupled_centers,
)
from .reduction import (
    CenterRecord,
    CornerReport,
    ReductionProblem,
    ReductionReport,
    build_ideal_from_support,
    reduce_problem,
    root_corner_for,
)
from .oracle import monomial_map, numeric_oracle
from .dot import export_dot, export_dot_star

__version__ = "0.1.0"
