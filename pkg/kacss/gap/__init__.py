from .construction import (
    ColumnCase,
    GapInstance,
    GapParams,
    all_halves,
    build_gap_instance,
    check_pass_through_columns,
    classify_columns,
    gap_lower_bound,
    level_cost,
    opt_lower_bound,
)
from .exact import ExactOptResult, exact_opt
from .report import ExactStatus, GapReport, check_halves_feasible, gap_report

__all__ = [
    "ColumnCase",
    "ExactOptResult",
    "ExactStatus",
    "GapInstance",
    "GapParams",
    "GapReport",
    "all_halves",
    "build_gap_instance",
    "check_halves_feasible",
    "check_pass_through_columns",
    "classify_columns",
    "exact_opt",
    "gap_lower_bound",
    "gap_report",
    "level_cost",
    "opt_lower_bound",
]
