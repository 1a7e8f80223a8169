from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from kacss.config import CuttingPlaneSettings, SimplexSettings
from kacss.core import Rational
from kacss.errors import InfeasibleInstanceError, InvariantViolation
from kacss.flow import CutCertificate, is_k_arc_connected, min_violated_cut
from kacss.graph import ArcSet, Instance
from kacss.lp.cutting_plane import CuttingPlaneDriver, LpTranscript
from kacss.lp.simplex import is_vertex
from pydantic import BaseModel

logger = logging.getLogger(__name__)


class FractionalSolution(BaseModel):
    """Optimal LP point with the rows that produced it.

    `seeded_cuts` are the degree rows added before the first solve, valued at the returned x.
    `cuts` are the rows found by separation, valued at the point they cut off.
    """

    x: List[Rational]
    value: Rational
    seeded_cuts: List[CutCertificate] = []
    cuts: List[CutCertificate] = []
    root: int = 0
    transcript: LpTranscript = LpTranscript()

    @property
    def total(self) -> Fraction:
        """x(A), the sum of all arc values"""
        return sum(self.x, Fraction(0))

    def row_sets(self) -> List[Tuple[int, ...]]:
        """Vertex sets of every cut row of the restricted LP, in the order the rows were added"""
        return [cut.vertices for cut in self.seeded_cuts + self.cuts]


def _check_root(instance: Instance, root: int) -> None:
    if not 0 <= root < instance.n:
        raise ValueError(f"root {root} is not a vertex of an instance with {instance.n} vertices")


def _bounds_from_fixings(
    instance: Instance, fixings: Optional[Dict[int, int]]
) -> Tuple[List[Fraction], List[Fraction]]:
    lower = [Fraction(0)] * instance.m
    upper = [Fraction(1)] * instance.m
    for arc, value in (fixings or {}).items():
        if not 0 <= arc < instance.m:
            raise ValueError(f"fixing refers to arc {arc} outside 0..{instance.m - 1}")
        if value not in (0, 1):
            raise ValueError(f"arc {arc} can only be fixed to 0 or 1, got {value}")
        lower[arc] = upper[arc] = Fraction(value)
    return lower, upper


def solve_lp_acss(
    instance: Instance,
    root: int = 0,
    fixings: Optional[Dict[int, int]] = None,
    settings: Optional[CuttingPlaneSettings] = None,
    simplex_settings: Optional[SimplexSettings] = None,
) -> FractionalSolution:
    """Optimal vertex of the cut-covering relaxation min c.x s.t. x(delta_out(U)) >= k, 0 <= x <= 1.

    `fixings` pins chosen arcs to 0 or 1 through their bounds.
    Raises InfeasibleInstanceError with a witnessing cut when the non-excluded arcs are not k-arc-connected.
    """
    settings = settings or CuttingPlaneSettings()
    _check_root(instance, root)
    lower, upper = _bounds_from_fixings(instance, fixings)

    available = [a for a in range(instance.m) if upper[a] == 1]
    if not is_k_arc_connected(instance, available, instance.k):
        witness = min_violated_cut(instance, upper, root, instance.k)
        assert witness is not None
        raise InfeasibleInstanceError(f"instance is not {instance.k}-arc-connected", witness)

    def separate(x: Sequence[Fraction]) -> Optional[CutCertificate]:
        return min_violated_cut(instance, x, root, instance.k)

    driver = CuttingPlaneDriver(
        instance,
        instance.costs,
        instance.k,
        separate,
        lower=lower,
        upper=upper,
        settings=settings,
        simplex_settings=simplex_settings,
    )
    seeded: List[FrozenSet[int]] = []
    if settings.seed_degree_cuts and instance.n > 1:
        everything = frozenset(range(instance.n))
        for v in range(instance.n):
            for vertices in (frozenset([v]), everything - {v}):
                if driver.add_cut(vertices):
                    seeded.append(vertices)

    vertex = driver.run()
    if not is_vertex(driver.linear_program(), vertex.primal):
        raise InvariantViolation("cutting-plane optimum is not a basic solution of the restricted LP")

    solution = FractionalSolution(
        x=vertex.primal,
        value=vertex.objective,
        seeded_cuts=[
            CutCertificate(vertices=tuple(vertices), value=instance.cut_value(vertices, vertex.primal))
            for vertices in seeded
        ],
        cuts=driver.separated,
        root=root,
        transcript=driver.transcript,
    )
    logger.info(
        f"Solved LP relaxation on {instance.n} vertices and {instance.m} arcs (k={instance.k}): "
        f"value {solution.value} after {driver.transcript.iterations} rounds and {len(driver.rows)} rows"
    )
    sparsity_holds(solution, instance)
    return solution


def fractional_support(solution: FractionalSolution) -> ArcSet:
    return frozenset(a for a, value in enumerate(solution.x) if 0 < value < 1)


def degree_lower_bound_holds(solution: FractionalSolution, instance: Instance) -> bool:
    """x(A) >= n*k, since every vertex needs k leaving arcs"""
    return solution.total >= instance.n * instance.k


def sparsity_holds(solution: FractionalSolution, instance: Instance) -> bool:
    support = len(fractional_support(solution))
    if support > 4 * instance.n:
        logger.warning(f"Fractional support has {support} arcs, more than 4n = {4 * instance.n}")
        return False
    return True
