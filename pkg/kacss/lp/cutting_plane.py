from __future__ import annotations

import logging
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Set, Tuple

from kacss.config import CuttingPlaneSettings, SimplexSettings
from kacss.core import Rational
from kacss.errors import InvariantViolation, SolverError
from kacss.flow import CutCertificate
from kacss.graph import Instance
from kacss.lp.simplex import LinearProgram, Relation, Row, VertexSolution, solve
from pydantic import BaseModel

logger = logging.getLogger(__name__)

SeparationOracle = Callable[[Sequence[Fraction]], Optional[CutCertificate]]
"""Given a primal point, returns a violated cut or None when the point satisfies the whole family."""


class LpTranscript(BaseModel):
    """Per-round record of a cutting-plane run: the cut added and the objective of the LP that produced it"""

    iterations: int = 0
    cuts: List[List[int]] = []
    objectives: List[Rational] = []


class CuttingPlaneDriver:
    """Solves min w.y over {y(delta_out(U)) >= k for every U in a family, bounds} by lazy row generation.

    The family is only known through a separation oracle; rows are deduplicated by vertex set.
    One driver instance is used per solve.
    """

    def __init__(
        self,
        instance: Instance,
        weights: Sequence[Fraction],
        k: int,
        separate: SeparationOracle,
        lower: Optional[Sequence[Fraction]] = None,
        upper: Optional[Sequence[Fraction]] = None,
        settings: Optional[CuttingPlaneSettings] = None,
        simplex_settings: Optional[SimplexSettings] = None,
    ) -> None:
        if len(weights) != instance.m:
            raise ValueError(f"weight vector has {len(weights)} entries for {instance.m} arcs")
        self.instance = instance
        self.weights = list(weights)
        self.k = k
        self.separate = separate
        self.lower = list(lower) if lower is not None else [Fraction(0)] * instance.m
        self.upper = list(upper) if upper is not None else [Fraction(1)] * instance.m
        self.settings = settings or CuttingPlaneSettings()
        self.simplex_settings = simplex_settings or SimplexSettings()

        self.rows: List[Row] = []
        self._seen: Set[Tuple[int, ...]] = set()
        self.separated: List[CutCertificate] = []
        self.transcript = LpTranscript()

    def add_cut(self, vertices: Iterable[int]) -> bool:
        """Add the row for U = vertices; returns False when that row is already present"""
        key = tuple(sorted(set(vertices)))
        if key in self._seen:
            return False
        self._seen.add(key)
        leaving = self.instance.delta_out(frozenset(key))
        self.rows.append(Row(coefficients={a: Fraction(1) for a in leaving}, relation=Relation.GE, rhs=self.k))
        return True

    def linear_program(self) -> LinearProgram:
        return LinearProgram(
            num_vars=self.instance.m,
            objective=self.weights,
            rows=self.rows,
            lower=self.lower,
            upper=self.upper,
        )

    def run(self) -> VertexSolution:
        for round_number in range(1, self.settings.max_rounds + 1):
            solution = solve(self.linear_program(), self.simplex_settings)
            if not solution.is_optimal:
                raise SolverError(f"restricted LP is {solution.status.value} in round {round_number}")
            cut = self.separate(solution.primal)
            self.transcript.iterations = round_number
            self.transcript.objectives.append(solution.objective)  # type: ignore[arg-type]
            if cut is None:
                logger.debug(
                    f"Cutting planes converged after {round_number} rounds with {len(self.rows)} rows, "
                    f"objective {solution.objective}"
                )
                return solution
            if not self.add_cut(cut.vertices):
                raise InvariantViolation(f"separation returned the existing row {list(cut.vertices)}")
            self.separated.append(cut)
            self.transcript.cuts.append(list(cut.vertices))
            logger.debug(f"Round {round_number}: objective {solution.objective}, added cut {list(cut.vertices)}")
        raise SolverError(f"cutting-plane loop did not converge within {self.settings.max_rounds} rounds")
