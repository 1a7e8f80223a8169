from __future__ import annotations

import logging
from typing import Optional

from kacss.arb import ConvexCombination, Direction, decompose
from kacss.config import Config
from kacss.graph import Instance
from kacss.lp import FractionalSolution, solve_lp_acss
from kacss.rounding.union import RoundingMode, RoundingReport, check_ratio_chain, round_union
from pydantic import BaseModel

logger = logging.getLogger(__name__)


class PipelineResult(BaseModel):
    solution: FractionalSolution
    comb_in: ConvexCombination
    comb_out: ConvexCombination
    report: RoundingReport


def solve_pipeline(
    instance: Instance,
    root: int = 0,
    mode: RoundingMode = RoundingMode.DERANDOMIZED,
    seed: int = 0,
    config: Optional[Config] = None,
) -> PipelineResult:
    """LP relaxation, in- and out-decompositions, then the union of one term from each"""
    cutting_plane = config.get_cutting_plane_settings() if config else None
    simplex = config.get_simplex_settings() if config else None
    column_generation = config.get_column_generation_settings() if config else None
    rounding = config.get_rounding_settings() if config else None

    solution = solve_lp_acss(instance, root, settings=cutting_plane, simplex_settings=simplex)
    combinations = {
        direction: decompose(
            instance,
            solution,
            root,
            instance.k,
            direction,
            settings=column_generation,
            cutting_plane_settings=cutting_plane,
            simplex_settings=simplex,
        )
        for direction in (Direction.IN, Direction.OUT)
    }
    report = round_union(
        instance,
        solution,
        combinations[Direction.IN],
        combinations[Direction.OUT],
        mode=mode,
        seed=seed,
        settings=rounding,
    )
    check_ratio_chain(report, instance)
    return PipelineResult(
        solution=solution,
        comb_in=combinations[Direction.IN],
        comb_out=combinations[Direction.OUT],
        report=report,
    )
