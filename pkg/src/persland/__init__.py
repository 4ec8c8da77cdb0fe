"""persland: persistence landscapes for topological statistics.

Exact and grid-based landscape construction, linear combinations and
averages, Lp/sup norms, distances and inner products, permutation tests,
nearest-average classification, file formats and a command-line toolbox.
"""

from .barcodes import (
    Barcode,
    BarcodeWarning,
    GridBarcode,
    GridSpec,
    ParseError,
    canonical_sort,
    parse_barcode,
    random_barcode,
    serialize_barcode,
    snap_to_grid,
    staircase_barcode,
    truncate_infinite,
)
from .landscapes import (
    Landscape,
    build_landscape,
    critical_count,
    pointwise_kmax_oracle,
    triangle_eval,
)
from .grids import (
    GridLandscape,
    build_grid_landscape,
    evaluate_grid,
    grid_error_bounds,
    grid_to_landscape,
    sample_exact_to_grid,
)
from .algebra import (
    average,
    grid_average,
    grid_linear_combination,
    linear_combination,
    merge_critical_numbers,
    scale,
)
from .metrics import (
    grid_lp_distance,
    inner_product,
    lp_distance,
    lp_norm,
    segment_lp_integral,
    sup_norm,
)
from .stats import (
    ClassifierModel,
    DistanceMatrix,
    PermutationTestResult,
    classifier_all_dims,
    classifier_classify,
    classifier_construct,
    distance_matrix,
    pairwise_permutation_matrix,
    permutation_test,
)
from .estimators import LandscapeTransformer, NearestAverageLandscapeClassifier
from .config import ToolboxConfig, load_config, parse_config
from .io import (
    detect_and_load,
    emit_gnuplot,
    read_barcode_file,
    read_file_list,
    read_landscape_file,
    write_barcode_file,
    write_landscape_file,
)

__version__ = "0.1.0"

__all__ = [
    "Barcode",
    "BarcodeWarning",
    "ClassifierModel",
    "DistanceMatrix",
    "GridBarcode",
    "GridLandscape",
    "GridSpec",
    "Landscape",
    "LandscapeTransformer",
    "NearestAverageLandscapeClassifier",
    "ParseError",
    "PermutationTestResult",
    "ToolboxConfig",
    "average",
    "build_grid_landscape",
    "build_landscape",
    "canonical_sort",
    "classifier_all_dims",
    "classifier_classify",
    "classifier_construct",
    "critical_count",
    "detect_and_load",
    "distance_matrix",
    "emit_gnuplot",
    "evaluate_grid",
    "grid_average",
    "grid_error_bounds",
    "grid_linear_combination",
    "grid_lp_distance",
    "grid_to_landscape",
    "inner_product",
    "linear_combination",
    "load_config",
    "lp_distance",
    "lp_norm",
    "merge_critical_numbers",
    "pairwise_permutation_matrix",
    "parse_barcode",
    "parse_config",
    "permutation_test",
    "pointwise_kmax_oracle",
    "random_barcode",
    "read_barcode_file",
    "read_file_list",
    "read_landscape_file",
    "sample_exact_to_grid",
    "scale",
    "segment_lp_integral",
    "serialize_barcode",
    "snap_to_grid",
    "staircase_barcode",
    "sup_norm",
    "triangle_eval",
    "truncate_infinite",
    "write_barcode_file",
    "write_landscape_file",
]
