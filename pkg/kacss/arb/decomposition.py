from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from kacss.arb.arborescence import ArborescenceSet, Direction, min_weight_k_arborescence, weight_of
from kacss.config import ColumnGenerationSettings, CuttingPlaneSettings, SimplexSettings
from kacss.core import Rational
from kacss.errors import InvariantViolation, SolverError
from kacss.graph import ArcSet, Instance
from kacss.lp import FractionalSolution, LinearProgram, Relation, Row, Sense, solve
from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)


class CombinationTerm(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    weight: Rational = Field(alias="lambda")
    arcs: Tuple[int, ...]


class ConvexCombination(BaseModel):
    """Probability distribution over k-arborescence arc sets sharing root, k and direction"""

    model_config = ConfigDict(frozen=True)

    root: int
    k: int
    direction: Direction
    terms: List[CombinationTerm]

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def weights(self) -> List[Fraction]:
        return [term.weight for term in self.terms]

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def term(self, index: int) -> ArborescenceSet:
        return ArborescenceSet(arcs=self.terms[index].arcs, root=self.root, k=self.k, direction=self.direction)

    def marginals(self, num_arcs: int) -> List[Fraction]:
        """Probability that each arc belongs to the sampled term"""
        result = [Fraction(0)] * num_arcs
        for term in self.terms:
            for a in term.arcs:
                result[a] += term.weight
        return result

    def dominated_by(self, x: Sequence[Fraction]) -> bool:
        return all(p <= value for p, value in zip(self.marginals(len(x)), x))

    def to_json_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)


def _master_program(columns: List[ArcSet], x: Sequence[Fraction]) -> LinearProgram:
    """max sum(lambda) s.t. sum over columns containing a of lambda <= x_a, lambda >= 0"""
    rows = []
    for a, bound in enumerate(x):
        coefficients = {i: Fraction(1) for i, column in enumerate(columns) if a in column}
        rows.append(Row(coefficients=coefficients, relation=Relation.LE, rhs=bound))
    return LinearProgram(
        num_vars=len(columns),
        objective=[Fraction(1)] * len(columns),
        sense=Sense.MAX,
        rows=rows,
        lower=[Fraction(0)] * len(columns),
        upper=[None] * len(columns),
    )


def decompose(
    instance: Instance,
    x: Union[FractionalSolution, Sequence[Fraction]],
    root: int,
    k: int,
    direction: Direction,
    settings: Optional[ColumnGenerationSettings] = None,
    cutting_plane_settings: Optional[CuttingPlaneSettings] = None,
    simplex_settings: Optional[SimplexSettings] = None,
) -> ConvexCombination:
    """Write x as dominating a convex combination of k-arborescences by column generation.

    The master maximizes the total weight of generated arc sets packed under x; pricing is a
    minimum-weight k-arborescence under the master duals. A term is added while its dual weight is below 1.
    """
    settings = settings or ColumnGenerationSettings()
    values = list(x.x) if isinstance(x, FractionalSolution) else [Fraction(v) for v in x]
    if len(values) != instance.m:
        raise ValueError(f"point has {len(values)} entries for {instance.m} arcs")
    if instance.n == 1:
        return ConvexCombination(root=root, k=k, direction=direction, terms=[CombinationTerm(weight=1, arcs=())])

    def price(weights: Sequence[Fraction]) -> ArborescenceSet:
        return min_weight_k_arborescence(
            instance,
            weights,
            root,
            k,
            direction,
            settings=cutting_plane_settings,
            simplex_settings=simplex_settings,
        )

    columns: List[ArcSet] = [price([1 - value for value in values]).arc_set]
    for round_number in range(1, settings.max_rounds + 1):
        master = solve(_master_program(columns, values), simplex_settings)
        if not master.is_optimal:
            raise SolverError(f"decomposition master LP is {master.status.value}")
        duals = master.duals
        candidate = price(duals)
        reduced_weight = weight_of(candidate.arcs, duals)
        logger.debug(
            f"Pricing round {round_number}: master value {master.objective}, "
            f"{len(columns)} columns, best dual weight {reduced_weight}"
        )
        if reduced_weight >= 1:
            break
        if candidate.arc_set in columns:
            logger.warning(f"Pricing returned an existing column with dual weight {reduced_weight} < 1")
            break
        columns.append(candidate.arc_set)
    else:
        raise SolverError(f"column generation did not converge within {settings.max_rounds} rounds")

    value = master.objective
    assert value is not None
    if value < 1:
        raise InvariantViolation(f"master value {value} is below 1; the point is not in the arborescence polytope")

    terms = [
        CombinationTerm(weight=weight / value, arcs=tuple(sorted(column)))
        for weight, column in zip(master.primal, columns)
        if weight > 0
    ]
    combination = ConvexCombination(root=root, k=k, direction=direction, terms=terms)
    if combination.total_weight != 1 or not combination.dominated_by(values):
        raise InvariantViolation("decomposition weights do not form a dominated convex combination")
    logger.info(
        f"Decomposed into {len(terms)} {direction.value}-{k}-arborescences at root {root} "
        f"after {len(columns)} generated columns (master value {value})"
    )
    return combination
