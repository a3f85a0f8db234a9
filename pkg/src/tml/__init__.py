"""Distances between finite timed metric spaces.

A timed metric space is a finite metric space with a nonnegative 1-Lipschitz
time function.  This package validates and classifies such spaces, computes
Gromov-Hausdorff style distances between them by exhaustive search over
minimal correspondences (exact values with certificates at small sizes,
two-sided bounds otherwise), and ships a campaign harness plus CLI that check
the expected inequalities on seeded random inputs.
"""

from .constructions import (
    SEQUENCE_FAMILIES,
    GluedSpace,
    SequenceSpec,
    build_sequence,
    enumerations_from_correspondence,
    glue_by_correspondence,
    make_future_developed,
    random_metric_space,
    random_time_function,
)
from .embeddings import (
    Enumeration,
    LinftyCloud,
    delete_first_coordinate,
    frechet_embed,
    hausdorff_in,
    hausdorff_sup,
    sup_distances,
    timed_frechet_embed,
)
from .engine import (
    DEFAULT_BUDGET,
    Correspondence,
    DistanceKind,
    DistanceResult,
    bb_gh,
    correspondence_hausdorff,
    distortion,
    fd_hh,
    gh_distance,
    glued_cross_distances,
    kappa_gh_distance,
    local_search_upper,
    make_correspondence,
    minimal_correspondences,
    pointed_gh,
    reevaluate,
    require_exact,
    simple_lower_bounds,
    tau_h_distance,
    timed_correspondence_hausdorff,
    transpose,
)
from .errors import (
    BudgetTooSmall,
    DeltaTooSmall,
    EmptySet,
    InvalidSpec,
    ParseError,
    SchemaError,
    TmlError,
    ValidationError,
)
from .harness import (
    SUITES,
    CampaignConfig,
    ReportRow,
    SequenceRow,
    run_sequence_experiment,
    run_suite,
)
from .io import read_space, write_report, write_space
from .spaces import (
    DEFAULT_TOL,
    FiniteMetricSpace,
    SpaceClass,
    StructureReport,
    TimedMetricSpace,
    build_metric_space,
    build_timed_space,
    classify,
    metric_violations,
    structure_report,
    time_violations,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetTooSmall",
    "CampaignConfig",
    "Correspondence",
    "DEFAULT_BUDGET",
    "DEFAULT_TOL",
    "DeltaTooSmall",
    "DistanceKind",
    "DistanceResult",
    "EmptySet",
    "Enumeration",
    "FiniteMetricSpace",
    "GluedSpace",
    "InvalidSpec",
    "LinftyCloud",
    "ParseError",
    "ReportRow",
    "SEQUENCE_FAMILIES",
    "SUITES",
    "SchemaError",
    "SequenceRow",
    "SequenceSpec",
    "SpaceClass",
    "StructureReport",
    "TimedMetricSpace",
    "TmlError",
    "ValidationError",
    "bb_gh",
    "build_metric_space",
    "build_sequence",
    "build_timed_space",
    "classify",
    "correspondence_hausdorff",
    "delete_first_coordinate",
    "distortion",
    "enumerations_from_correspondence",
    "fd_hh",
    "frechet_embed",
    "gh_distance",
    "glue_by_correspondence",
    "glued_cross_distances",
    "hausdorff_in",
    "hausdorff_sup",
    "kappa_gh_distance",
    "local_search_upper",
    "make_correspondence",
    "make_future_developed",
    "metric_violations",
    "minimal_correspondences",
    "pointed_gh",
    "random_metric_space",
    "random_time_function",
    "read_space",
    "reevaluate",
    "require_exact",
    "run_sequence_experiment",
    "run_suite",
    "simple_lower_bounds",
    "structure_report",
    "sup_distances",
    "tau_h_distance",
    "time_violations",
    "timed_correspondence_hausdorff",
    "timed_frechet_embed",
    "transpose",
    "write_report",
    "write_space",
]
