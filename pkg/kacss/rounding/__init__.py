from .pipeline import PipelineResult, solve_pipeline
from .sampling import check_seed, sample_index, sample_term
from .union import (
    NO_GUARANTEE,
    RoundingMode,
    RoundingReport,
    approximation_bound,
    check_ratio_chain,
    expected_union_size,
    round_union,
)

__all__ = [
    "NO_GUARANTEE",
    "PipelineResult",
    "RoundingMode",
    "RoundingReport",
    "approximation_bound",
    "check_ratio_chain",
    "check_seed",
    "expected_union_size",
    "round_union",
    "sample_index",
    "sample_term",
    "solve_pipeline",
]
