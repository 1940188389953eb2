from .blocks import BlockFamily, build_blocks, conflict_sets, greedy_independent, majority_color
from .certificate import (
    Certificate,
    Homogeneous,
    IsoRich,
    format_certificate,
    parse_certificate,
    verify_certificate,
)
from .constants import Constants, derive_constants, desk_constants, minimal_m1
from .partition import (
    NeighborhoodPartition,
    class_lower_bound,
    iso_rich_family,
    neighborhood_classes,
    sample_distinguishing_set,
)
from .run import PipelineInvariantError, PipelineResult, Trace, run_pipeline

__all__ = [
    "BlockFamily", "build_blocks", "conflict_sets", "greedy_independent", "majority_color",
    "Certificate", "Homogeneous", "IsoRich", "format_certificate", "parse_certificate",
    "verify_certificate", "Constants", "derive_constants", "desk_constants", "minimal_m1",
    "NeighborhoodPartition", "class_lower_bound", "iso_rich_family", "neighborhood_classes",
    "sample_distinguishing_set", "PipelineInvariantError", "PipelineResult", "Trace", "run_pipeline",
]
