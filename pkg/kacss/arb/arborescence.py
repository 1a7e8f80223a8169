from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from typing import AbstractSet, Iterable, Optional, Sequence, Tuple

from kacss.config import CuttingPlaneSettings, SimplexSettings
from kacss.errors import InfeasibleInstanceError, InvariantViolation
from kacss.flow import CutCertificate, flow_at_least, is_k_arc_connected, min_violated_cut
from kacss.graph import ArcSet, Instance
from kacss.lp import CuttingPlaneDriver
from pydantic import BaseModel, ConfigDict, field_validator

logger = logging.getLogger(__name__)


class Direction(str, Enum):
    OUT = "out"
    IN = "in"


class ArborescenceSet(BaseModel):
    """An arc set containing k arc-disjoint arborescences rooted at `root`, all pointing the same way."""

    model_config = ConfigDict(frozen=True)

    arcs: Tuple[int, ...]
    root: int
    k: int
    direction: Direction

    @field_validator("arcs", mode="after")
    @classmethod
    def sort_arcs(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(sorted(set(value)))

    @property
    def arc_set(self) -> ArcSet:
        return frozenset(self.arcs)

    def __len__(self) -> int:
        return len(self.arcs)


def _oriented(instance: Instance, direction: Direction) -> Instance:
    """In-arborescences of an instance are out-arborescences of its reversal, with the same arc indices"""
    return instance if direction == Direction.OUT else instance.reversed()


def is_k_arborescence(instance: Instance, arcs: Iterable[int], root: int, k: int, direction: Direction) -> bool:
    if not 0 <= root < instance.n:
        raise ValueError(f"root {root} is not a vertex")
    capacities = [Fraction(0)] * instance.m
    for a in arcs:
        capacities[a] = Fraction(1)
    for v in range(instance.n):
        if v == root:
            continue
        s, t = (root, v) if direction == Direction.OUT else (v, root)
        if not flow_at_least(instance, capacities, s, t, Fraction(k)):
            return False
    return True


def prune_to_minimal(instance: Instance, arcs: AbstractSet[int], root: int, k: int, direction: Direction) -> ArcSet:
    """Drop arcs in descending index order while the rest still contains a k-arborescence"""
    kept = set(arcs)
    for a in sorted(arcs, reverse=True):
        kept.discard(a)
        if not is_k_arborescence(instance, kept, root, k, direction):
            kept.add(a)
    return frozenset(kept)


def min_weight_k_arborescence(
    instance: Instance,
    weights: Sequence[Fraction],
    root: int,
    k: int,
    direction: Direction,
    settings: Optional[CuttingPlaneSettings] = None,
    simplex_settings: Optional[SimplexSettings] = None,
) -> ArborescenceSet:
    """Cheapest arc set containing a k-arborescence, from an integral vertex of the covering LP

    Minimizes w.y subject to y(delta_out(U)) >= k for every proper U containing the root and 0 <= y <= 1.
    """
    settings = settings or CuttingPlaneSettings()
    if any(w < 0 for w in weights):
        raise ValueError("arborescence weights must be non-negative")
    oriented = _oriented(instance, direction)

    if not is_k_arborescence(oriented, range(instance.m), root, k, Direction.OUT):
        witness = min_violated_cut(oriented, [Fraction(1)] * instance.m, root, k, from_root_only=True)
        assert witness is not None
        raise InfeasibleInstanceError(f"no {direction.value}-{k}-arborescence rooted at {root}", witness)

    def separate(y: Sequence[Fraction]) -> Optional[CutCertificate]:
        return min_violated_cut(oriented, y, root, k, from_root_only=True)

    driver = CuttingPlaneDriver(oriented, weights, k, separate, settings=settings, simplex_settings=simplex_settings)
    if settings.seed_degree_cuts:
        everything = frozenset(range(instance.n))
        for v in range(instance.n):
            if v != root:
                driver.add_cut(everything - {v})

    vertex = driver.run()
    fractional = [a for a, value in enumerate(vertex.primal) if value not in (0, 1)]
    if fractional:
        raise InvariantViolation(f"arborescence LP returned a fractional vertex on arcs {fractional}")

    chosen = frozenset(a for a, value in enumerate(vertex.primal) if value == 1)
    minimal = prune_to_minimal(oriented, chosen, root, k, Direction.OUT)
    logger.debug(
        f"Minimum-weight {direction.value}-{k}-arborescence at root {root}: weight {vertex.objective}, "
        f"{len(chosen)} arcs pruned to {len(minimal)}"
    )
    return ArborescenceSet(arcs=tuple(minimal), root=root, k=k, direction=direction)


def union_is_k_arc_connected(instance: Instance, t_in: ArborescenceSet, t_out: ArborescenceSet, k: int) -> bool:
    return is_k_arc_connected(instance, t_in.arc_set | t_out.arc_set, k)


def counting_lower_bound(instance: Instance, k: int) -> int:
    """Every non-root vertex needs k arcs entering (or leaving) it inside a k-arborescence"""
    return k * (instance.n - 1)


def weight_of(arcs: Iterable[int], weights: Sequence[Fraction]) -> Fraction:
    return sum((weights[a] for a in arcs), Fraction(0))
