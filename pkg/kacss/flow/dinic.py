from __future__ import annotations

import logging
from collections import deque
from fractions import Fraction
from typing import AbstractSet, Iterable, List, Optional, Sequence, Tuple

from kacss.core import Rational
from kacss.errors import InvariantViolation
from kacss.graph import Instance
from pydantic import BaseModel, ConfigDict, field_validator

logger = logging.getLogger(__name__)

CapacityVector = Sequence[Fraction]
"""Per-arc non-negative capacities, indexed like the arcs of the Instance."""


class CutCertificate(BaseModel):
    """A vertex set U together with the capacity of the arcs leaving it."""

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[int, ...]
    value: Rational

    @field_validator("vertices", mode="after")
    @classmethod
    def sort_vertices(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if not value:
            raise ValueError("a cut must contain at least one vertex")
        return tuple(sorted(set(value)))

    def as_set(self) -> AbstractSet[int]:
        return frozenset(self.vertices)


class FlowResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: Rational
    cut: CutCertificate


class _ResidualNetwork:
    """Residual graph of an instance; edge 2i is arc i forward, edge 2i+1 its reverse."""

    def __init__(self, instance: Instance, capacities: CapacityVector) -> None:
        if len(capacities) != instance.m:
            raise ValueError(f"capacity vector has {len(capacities)} entries for {instance.m} arcs")
        self.n = instance.n
        self.heads: List[int] = []
        self.residual: List[Fraction] = []
        self.adjacency: List[List[int]] = [[] for _ in range(instance.n)]
        for index, arc in enumerate(instance.arcs):
            capacity = capacities[index]
            if capacity < 0:
                raise ValueError(f"arc {index} has negative capacity {capacity}")
            self.heads.extend((arc.head, arc.tail))
            self.residual.extend((Fraction(capacity), Fraction(0)))
            if capacity > 0:
                self.adjacency[arc.tail].append(2 * index)
                self.adjacency[arc.head].append(2 * index + 1)

    def _levels(self, s: int) -> List[int]:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.adjacency[u]:
                v = self.heads[e]
                if level[v] < 0 and self.residual[e] > 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level

    def _push(self, u: int, t: int, limit: Optional[Fraction], level: List[int], pointer: List[int]) -> Fraction:
        if u == t:
            assert limit is not None
            return limit
        edges = self.adjacency[u]
        while pointer[u] < len(edges):
            e = edges[pointer[u]]
            v = self.heads[e]
            if self.residual[e] > 0 and level[v] == level[u] + 1:
                capacity = self.residual[e] if limit is None else min(limit, self.residual[e])
                pushed = self._push(v, t, capacity, level, pointer)
                if pushed > 0:
                    self.residual[e] -= pushed
                    self.residual[e ^ 1] += pushed
                    return pushed
            pointer[u] += 1
        return Fraction(0)

    def run(self, s: int, t: int, target: Optional[Fraction] = None) -> Fraction:
        """Blocking-flow phases until no augmenting path remains or the flow reaches `target`"""
        flow = Fraction(0)
        while target is None or flow < target:
            level = self._levels(s)
            if level[t] < 0:
                break
            pointer = [0] * self.n
            while True:
                pushed = self._push(s, t, None, level, pointer)
                if pushed == 0:
                    break
                flow += pushed
                if target is not None and flow >= target:
                    break
        return flow

    def reachable(self, s: int) -> List[int]:
        return [v for v, depth in enumerate(self._levels(s)) if depth >= 0]


def max_flow(instance: Instance, capacities: CapacityVector, s: int, t: int) -> FlowResult:
    """Maximum s-t flow with the canonical minimum cut (vertices reachable from s in the residual graph)"""
    if s == t:
        raise ValueError("source and sink must differ")
    network = _ResidualNetwork(instance, capacities)
    value = network.run(s, t)
    source_side = frozenset(network.reachable(s))
    cut_value = instance.cut_value(source_side, capacities)
    if cut_value != value:
        raise InvariantViolation(f"max-flow {value} differs from min-cut {cut_value} for s={s}, t={t}")
    return FlowResult(value=value, cut=CutCertificate(vertices=tuple(source_side), value=cut_value))


def _unit_capacities(instance: Instance, arcs: Iterable[int]) -> List[Fraction]:
    capacities = [Fraction(0)] * instance.m
    for a in arcs:
        capacities[a] = Fraction(1)
    return capacities


def flow_at_least(instance: Instance, capacities: CapacityVector, s: int, t: int, target: Fraction) -> bool:
    """Whether the maximum s-t flow reaches `target`; stops augmenting as soon as it does"""
    return _ResidualNetwork(instance, capacities).run(s, t, target=Fraction(target)) >= target


def is_k_arc_connected(instance: Instance, arcs: Iterable[int], k: int) -> bool:
    """True iff every nonempty proper vertex set has at least k leaving arcs among `arcs`"""
    if instance.n == 1 or k <= 0:
        return True
    capacities = _unit_capacities(instance, instance.validate_arc_set(arcs))
    target = Fraction(k)
    root = 0
    for v in range(1, instance.n):
        if not flow_at_least(instance, capacities, root, v, target):
            return False
        if not flow_at_least(instance, capacities, v, root, target):
            return False
    return True


def min_violated_cut(
    instance: Instance, x: CapacityVector, root: int, k: int, *, from_root_only: bool = False
) -> Optional[CutCertificate]:
    """Minimum cut of value below k over the 2(n-1) root flows, or None when x covers every cut.

    With `from_root_only` only cuts containing the root are examined (arborescence constraints).
    """
    if not 0 <= root < instance.n:
        raise ValueError(f"root {root} is not a vertex")
    best: Optional[CutCertificate] = None
    for v in range(instance.n):
        if v == root:
            continue
        pairs = [(root, v)] if from_root_only else [(root, v), (v, root)]
        for s, t in pairs:
            cut = max_flow(instance, x, s, t).cut
            if cut.value < k and (best is None or cut.value < best.value):
                best = cut
    if best is not None:
        logger.debug(f"Violated cut {list(best.vertices)} with value {best.value} < {k}")
    return best
