from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from kacss.arb import ConvexCombination, Direction
from kacss.config import RoundingSettings
from kacss.core import Rational
from kacss.errors import InvariantViolation
from kacss.flow import is_k_arc_connected
from kacss.graph import Instance
from kacss.lp import FractionalSolution, fractional_support
from kacss.rounding.sampling import check_seed, sample_index
from pydantic import BaseModel

logger = logging.getLogger(__name__)

NO_GUARANTEE = "no guarantee"


class RoundingMode(str, Enum):
    SAMPLED = "sampled"
    DERANDOMIZED = "derandomized"


class RoundingReport(BaseModel):
    mode: RoundingMode
    seed: Optional[int] = None
    size: Rational
    lp_value: Rational
    ratio: Optional[Rational] = None
    bound: Optional[Rational] = None
    arcs: List[int]
    guarantee: str
    pair: Tuple[int, int]
    expected_size: Rational
    quadratic_bound: Rational
    fractional_arcs: int
    fractional_mass: Rational
    jensen_bound: Optional[Rational] = None


def approximation_bound(k: int) -> Fraction:
    return min(Fraction(7, 4), 1 + Fraction(1, k))


def expected_union_size(instance: Instance, comb_in: ConvexCombination, comb_out: ConvexCombination) -> Fraction:
    """Exact expected cost of T_in | T_out for independent draws; the arc count on unit costs"""
    p_in = comb_in.marginals(instance.m)
    p_out = comb_out.marginals(instance.m)
    return sum(
        (cost * (a + b - a * b) for cost, a, b in zip(instance.costs, p_in, p_out)),
        Fraction(0),
    )


def _check_pair(comb_in: ConvexCombination, comb_out: ConvexCombination) -> None:
    if comb_in.direction != Direction.IN or comb_out.direction != Direction.OUT:
        raise ValueError("expected an in-combination and an out-combination")
    if comb_in.root != comb_out.root or comb_in.k != comb_out.k:
        raise ValueError("combinations must share root and k")


def _best_pair(instance: Instance, comb_in: ConvexCombination, comb_out: ConvexCombination) -> Tuple[int, int]:
    """Cheapest union over the support cross product, smallest (i, j) on ties"""
    best: Optional[Tuple[int, int]] = None
    best_cost: Optional[Fraction] = None
    for i, t_in in enumerate(comb_in.terms):
        for j, t_out in enumerate(comb_out.terms):
            cost = instance.total_cost(set(t_in.arcs) | set(t_out.arcs))
            if best_cost is None or cost < best_cost:
                best, best_cost = (i, j), cost
    assert best is not None
    return best


def round_union(
    instance: Instance,
    solution: FractionalSolution,
    comb_in: ConvexCombination,
    comb_out: ConvexCombination,
    mode: RoundingMode = RoundingMode.DERANDOMIZED,
    seed: int = 0,
    settings: Optional[RoundingSettings] = None,
) -> RoundingReport:
    """Union of one in- and one out-k-arborescence, either sampled or the best support pair"""
    settings = settings or RoundingSettings()
    _check_pair(comb_in, comb_out)

    if mode == RoundingMode.SAMPLED:
        check_seed(seed)
        pair = (sample_index(comb_in, seed, settings.stream_in), sample_index(comb_out, seed, settings.stream_out))
    else:
        pair = _best_pair(instance, comb_in, comb_out)
    union = sorted(set(comb_in.terms[pair[0]].arcs) | set(comb_out.terms[pair[1]].arcs))
    if not is_k_arc_connected(instance, union, comb_in.k):
        raise InvariantViolation(f"union of terms {pair} is not {comb_in.k}-arc-connected")

    x = solution.x
    support = fractional_support(solution)
    mass = sum((x[a] for a in support), Fraction(0))
    total = solution.total
    size = instance.total_cost(union)
    lp_value = solution.value
    unit = instance.is_unit_cost
    jensen = 1 + (mass - mass * mass / len(support)) / total if support and total > 0 else None

    report = RoundingReport(
        mode=mode,
        seed=seed if mode == RoundingMode.SAMPLED else None,
        size=size,
        lp_value=lp_value,
        ratio=size / lp_value if lp_value > 0 else None,
        bound=approximation_bound(comb_in.k) if unit else None,
        arcs=union,
        guarantee=f"min{{7/4, 1+1/k}} with k={comb_in.k}" if unit else NO_GUARANTEE,
        pair=pair,
        expected_size=expected_union_size(instance, comb_in, comb_out),
        quadratic_bound=sum((2 * value - value * value for value in x), Fraction(0)),
        fractional_arcs=len(support),
        fractional_mass=mass,
        jensen_bound=jensen,
    )
    logger.info(
        f"Rounded ({mode.value}) to {len(union)} arcs of cost {size} against LP value {lp_value} "
        f"using terms {pair}"
    )
    return report


def check_ratio_chain(report: RoundingReport, instance: Instance) -> None:
    """Verify each step from the returned size down to min{7/4, 1+1/k} times the LP value, exactly.

    Only meaningful on unit costs; weighted reports carry no guarantee and are skipped.
    """
    if not instance.is_unit_cost:
        logger.debug("Weighted instance, ratio chain not checked")
        return
    lp_value = report.lp_value
    bound = approximation_bound(instance.k)

    # the last two steps need |F| <= 4n and x(A) >= nk
    premises = report.fractional_arcs <= 4 * instance.n and lp_value >= instance.n * instance.k

    failures: List[str] = []
    if report.mode == RoundingMode.DERANDOMIZED and report.size > report.expected_size:
        failures.append(f"best pair size {report.size} exceeds the expectation {report.expected_size}")
    if report.expected_size > report.quadratic_bound:
        failures.append(f"expectation {report.expected_size} exceeds sum(2x - x^2) = {report.quadratic_bound}")
    if report.jensen_bound is not None:
        if report.quadratic_bound > report.jensen_bound * lp_value:
            failures.append(f"sum(2x - x^2) exceeds the averaged bound {report.jensen_bound} times {lp_value}")
        if premises and report.jensen_bound > bound:
            failures.append(f"averaged bound {report.jensen_bound} exceeds {bound}")
    elif report.quadratic_bound > lp_value:
        failures.append(f"integral point but sum(2x - x^2) = {report.quadratic_bound} exceeds {lp_value}")
    if premises and report.expected_size > bound * lp_value:
        failures.append(f"expectation {report.expected_size} exceeds {bound} times the LP value {lp_value}")
    if premises and report.mode == RoundingMode.DERANDOMIZED and report.size > bound * lp_value:
        failures.append(f"size {report.size} exceeds {bound} times the LP value {lp_value}")

    if failures:
        raise InvariantViolation("; ".join(failures))
