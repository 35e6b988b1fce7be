"""Exact computation of Hilbert functions, regularity indices and Segre
bounds of fat point schemes in projective space, over the rationals or a
prime field."""

from .errors import (
    FatPointsError,
    GenerationFailureError,
    HypothesisNotMetError,
    InternalInvariantViolationError,
    InvalidInputError,
    UnsupportedCharacteristicError,
)
from .fields import DEFAULT_PRIME, PrimeField, QQ
from .generators import GenSpec, ResampleResult, generate, resample_until
from .geometry import (
    Flat,
    InducedFlat,
    ProjectivePoint,
    contains,
    flat_from_points,
    in_general_position_on_span,
    in_linearly_general_position,
    induced_flats,
    is_collinear,
    is_nondegenerate,
    span_dim,
)
from .harness import (
    CheckResult,
    SuiteReport,
    check_binomial_identity,
    check_decomposition,
    check_formula,
    check_hilbert_dominance,
    check_invariance,
    check_lower_bound,
    check_monotonicity,
    check_segre_upper,
    run_theorem_suite,
    search_nonattainment,
)
from .linalg import Matrix, nullspace_basis, nullspace_dim, rank, rref
from .schemes import (
    ConditionMatrix,
    FatPointScheme,
    HilbertProfile,
    conditions_matrix,
    embed,
    graded_sum_contains,
    hilbert,
    hilbert_profile,
    ideal_dim,
    monomial_in_sum,
    multiplicity,
    quotient_sum_reg,
    regularity_index,
    restrict_to_flat,
    subscheme,
    sum_graded_dim,
    with_field,
)
from .segre import (
    FormulaHypothesis,
    SegreReport,
    SegreWitness,
    closed_form_reg,
    segre_T_j,
    segre_bound,
    weight_on_flat,
)
from .serialization import (
    load_scheme,
    save_scheme,
    scheme_fingerprint,
    scheme_from_obj,
    scheme_to_obj,
)

__version__ = "0.1.0"
