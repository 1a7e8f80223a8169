from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from typing import List, Optional

from kacss.config import Config
from kacss.core import Rational
from kacss.errors import InvariantViolation, SearchBudgetExceeded
from kacss.flow import min_violated_cut
from kacss.gap.construction import (
    ColumnCase,
    GapInstance,
    GapParams,
    all_halves,
    build_gap_instance,
    check_pass_through_columns,
    gap_lower_bound,
    opt_lower_bound,
)
from kacss.gap.exact import exact_opt
from kacss.lp import solve_lp_acss
from pydantic import BaseModel

logger = logging.getLogger(__name__)


class ExactStatus(str, Enum):
    OPTIMAL = "optimal"
    UNKNOWN = "unknown"
    SKIPPED = "skipped"


class GapReport(BaseModel):
    d: int
    r: int
    vertices: int
    arcs: int
    total_cost: Rational
    lp_value: Rational
    exact_status: ExactStatus = ExactStatus.SKIPPED
    exact_opt: Optional[Rational] = None
    incumbent: Optional[Rational] = None
    ratio: Optional[Rational] = None
    nodes: Optional[int] = None
    column_cases: Optional[List[ColumnCase]] = None
    optimum_arcs: Optional[List[int]] = None
    opt_bound: Rational
    gap_bound: Rational


def check_halves_feasible(gap: GapInstance) -> None:
    """The all-halves point covers every cut once and costs d/2"""
    halves = all_halves(gap)
    cut = min_violated_cut(gap.instance, halves, gap.source, 1)
    if cut is not None:
        raise InvariantViolation(f"all-halves point violates cut {list(cut.vertices)} with value {cut.value}")
    cost = sum((c * h for c, h in zip(gap.instance.costs, halves)), Fraction(0))
    if cost != Fraction(gap.params.d, 2):
        raise InvariantViolation(f"all-halves point costs {cost}, expected {gap.params.d}/2")


def gap_report(
    params: GapParams,
    compute_exact: bool = False,
    config: Optional[Config] = None,
    gap: Optional[GapInstance] = None,
) -> GapReport:
    """LP value of G(d, s, s) and, on request, its exact optimum and the realized gap"""
    gap = gap or build_gap_instance(params)
    instance = gap.instance
    d, r = params.d, params.r
    cutting_plane = config.get_cutting_plane_settings() if config else None
    simplex = config.get_simplex_settings() if config else None

    check_halves_feasible(gap)
    solution = solve_lp_acss(instance, gap.source, settings=cutting_plane, simplex_settings=simplex)
    if solution.value > Fraction(d, 2):
        raise InvariantViolation(f"LP value {solution.value} exceeds d/2 = {Fraction(d, 2)}")

    report = GapReport(
        d=d,
        r=r,
        vertices=instance.n,
        arcs=instance.m,
        total_cost=instance.total_cost(range(instance.m)),
        lp_value=solution.value,
        opt_bound=opt_lower_bound(d, r),
        gap_bound=gap_lower_bound(d),
    )
    if not compute_exact:
        return report

    try:
        result = exact_opt(
            instance,
            settings=config.get_branch_and_bound_settings() if config else None,
            cutting_plane_settings=cutting_plane,
            simplex_settings=simplex,
        )
    except SearchBudgetExceeded as e:
        logger.warning(f"Exact optimum unknown for d={d}, r={r}: {e}")
        return report.model_copy(
            update={"exact_status": ExactStatus.UNKNOWN, "incumbent": e.incumbent, "nodes": e.nodes}
        )

    if result.value < solution.value:
        raise InvariantViolation(f"exact optimum {result.value} is below the LP value {solution.value}")
    if result.value < opt_lower_bound(d, r):
        raise InvariantViolation(f"exact optimum {result.value} is below {opt_lower_bound(d, r)}")
    cases = check_pass_through_columns(gap, result.arcs) if d > 1 else None

    ratio = result.value / solution.value
    logger.info(f"G({d}, s, s) with r={r}: LP {solution.value}, optimum {result.value}, ratio {ratio}")
    return report.model_copy(
        update={
            "exact_status": ExactStatus.OPTIMAL,
            "exact_opt": result.value,
            "ratio": ratio,
            "nodes": result.nodes,
            "column_cases": cases,
            "optimum_arcs": result.arcs,
        }
    )
