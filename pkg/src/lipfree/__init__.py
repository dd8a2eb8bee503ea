"""Exact norms and isometric embedding constructions in Lipschitz-free
spaces over finite metric spaces."""

from .constructions import (
    AdmissibilityResult,
    EmbeddingPlan,
    IndexPartition,
    LinftyReport,
    PlanReport,
    ProjectionReport,
    admissibility_lp,
    bump_eval,
    check_plan,
    f_k_eval,
    l1_basis,
    l1_combination,
    lin_comb_eval,
    lin_comb_function,
    make_plan,
    pair_function,
    plan_from_json,
    plan_to_json,
    projection_coeffs,
    radii_accumulation,
    radii_bounded_separated,
    radii_ultrametric,
    radii_unbounded,
    radii_unbounded_delta,
    verify_l1_isometry,
    verify_linfty_isometry,
    verify_projection,
)
from .errors import (
    Asymmetric,
    DegeneratePair,
    EmptyLevels,
    ExactnessRequired,
    HorizonExhausted,
    InvalidFamilyParameters,
    InvalidTriple,
    LipfreeError,
    MetadataRequired,
    NegativeOrZeroOffDiagonal,
    NotConvergent,
    NotUltrametric,
    SeparationViolation,
    TooFewPoints,
    TriangleViolation,
)
from .metric_core import (
    FiniteMetricSpace,
    FreeElement,
    LipFunction,
    MetricFamily,
    as_fraction,
    delta,
    fraction_str,
    free_element_from_json,
    free_element_to_json,
    is_ultrametric,
    load_space,
    truncate,
    validate_metric,
)
from .norm_engine import (
    BallSection,
    FreeNormResult,
    ball_section,
    free_norm_flow,
    free_norm_lp,
    lip_norm,
    nonrotund_witness,
    pairing,
    two_point_norm,
)
from .space_catalog import (
    DendrogramSpec,
    dendrogram_ultrametric,
    make_family,
    parse_family,
    parse_space,
    ultrametric_from_codes,
)

__version__ = "0.1.0"
