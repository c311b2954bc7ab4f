"""doqr: depth, outlyingness, quantile and rank functions for multivariate
data, built on halfspace (Tukey) depth and projection outlyingness, with
closed-form normal-model oracles and a masking-breakdown experiment harness.
"""

from .data import (
    CsvFormatError,
    Dataset,
    SeedSpec,
    SingularMatrixError,
    affine_transform,
    general_position_2d,
    load_csv,
    write_csv,
)
from .halfspace import (
    DepthConfig,
    depth_1d,
    depth_2d_exact,
    depth_approx,
    depth_bruteforce,
    max_depth,
    sample_depths,
    tukey_median,
    unit_directions,
)
from .induction import (
    CentralRegion,
    EmptyRegionError,
    RankVector,
    central_region,
    contour_polyline,
    convex_hull,
    doqr_depth,
    outlyingness,
    points_in_hull,
    quantile_function,
    rank_function,
    sign_test,
    trimmed_mean,
)
from .normal import (
    chi2_cdf,
    chi2_pdf,
    chi2_quantile,
    hd_normal,
    oh_cdf,
    oh_normal,
    oh_pdf,
    oh_threshold,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
)
from .outliers import (
    ContaminationSpec,
    ExperimentReport,
    GridCell,
    MethodSummary,
    TrialResult,
    compare_identifiers,
    comparison_to_csv,
    default_masking_grid,
    identify,
    masking_experiment,
    projection_cutoff,
    sample_contaminated,
)
from .projection import (
    DegenerateDirectionsError,
    DegenerateScaleWarning,
    median_mad,
    po_1d,
    po_approx,
    projection_depth,
)

__version__ = "0.1.0"

__all__ = [
    "CentralRegion",
    "ContaminationSpec",
    "CsvFormatError",
    "Dataset",
    "DegenerateDirectionsError",
    "DegenerateScaleWarning",
    "DepthConfig",
    "EmptyRegionError",
    "ExperimentReport",
    "GridCell",
    "MethodSummary",
    "RankVector",
    "SeedSpec",
    "SingularMatrixError",
    "TrialResult",
    "affine_transform",
    "central_region",
    "chi2_cdf",
    "chi2_pdf",
    "chi2_quantile",
    "compare_identifiers",
    "comparison_to_csv",
    "contour_polyline",
    "convex_hull",
    "default_masking_grid",
    "depth_1d",
    "depth_2d_exact",
    "depth_approx",
    "depth_bruteforce",
    "doqr_depth",
    "general_position_2d",
    "hd_normal",
    "identify",
    "load_csv",
    "masking_experiment",
    "max_depth",
    "median_mad",
    "oh_cdf",
    "oh_normal",
    "oh_pdf",
    "oh_threshold",
    "outlyingness",
    "po_1d",
    "po_approx",
    "points_in_hull",
    "projection_cutoff",
    "projection_depth",
    "quantile_function",
    "rank_function",
    "sample_contaminated",
    "sample_depths",
    "sign_test",
    "std_normal_cdf",
    "std_normal_pdf",
    "std_normal_quantile",
    "trimmed_mean",
    "tukey_median",
    "unit_directions",
    "write_csv",
]
