from __future__ import annotations

import logging
from enum import IntEnum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Tuple

from kacss.errors import InvariantViolation
from kacss.graph import Arc, ArcSet, Instance
from pydantic import BaseModel, ConfigDict, model_validator

logger = logging.getLogger(__name__)


class GapParams(BaseModel):
    """Depth d and column count r of the recursive family"""

    model_config = ConfigDict(frozen=True)

    d: int
    r: int

    @model_validator(mode="after")
    def check_params(self) -> GapParams:
        if self.d < 1:
            raise ValueError(f"depth must be at least 1, got {self.d}")
        if self.r < 1:
            raise ValueError(f"column count must be at least 1, got {self.r}")
        return self


def level_cost(params: GapParams, level: int) -> Fraction:
    """Cost of every arc at `level`: 1 / (2 (r+1) r^(d-level)), so each level costs 1 in total"""
    if not 1 <= level <= params.d:
        raise ValueError(f"level {level} is outside 1..{params.d}")
    return Fraction(1, 2 * (params.r + 1) * params.r ** (params.d - level))


class ColumnCase(IntEnum):
    """How a top-level column of a strongly connected subgraph meets the top-level arcs"""

    BRANCHING = 1  # three or more incident top-level arcs
    PASS_THROUGH = 2  # one arc at each terminal
    ONE_SIDED = 3  # both arcs at the same terminal


class GapInstance(BaseModel):
    model_config = ConfigDict(frozen=True)

    params: GapParams
    instance: Instance
    levels: Tuple[int, ...]
    source: int
    column_terminals: Tuple[Tuple[int, int], ...]
    """(u_i, v_i) of each top-level column, i = 1..r"""
    column_arcs: Tuple[Tuple[int, ...], ...]
    ladder: Tuple[Tuple[int, int], ...]
    """Top-level rungs j = 1..r+1 as (index of (v_j, v_j-1), index of (u_j-1, u_j))"""

    def level_arcs(self, level: int) -> ArcSet:
        return frozenset(a for a, arc_level in enumerate(self.levels) if arc_level == level)

    def columns(self) -> List[ArcSet]:
        return [frozenset(arcs) for arcs in self.column_arcs]

    def top_level_arcs(self) -> ArcSet:
        return self.level_arcs(self.params.d)

    def sidecar(self) -> Dict[str, Any]:
        return {"d": self.params.d, "r": self.params.r, "source": self.source, "levels": list(self.levels)}


class _Builder:
    def __init__(self, params: GapParams) -> None:
        self.params = params
        self.n = 0
        self.pairs: List[Tuple[int, int]] = []
        self.levels: List[int] = []

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def arc(self, tail: int, head: int, level: int) -> int:
        self.pairs.append((tail, head))
        self.levels.append(level)
        return len(self.pairs) - 1

    def bidirected_path(self, s: int, t: int) -> None:
        """Depth one: s - v_1 - ... - v_r - t with both orientations of every link"""
        inner = [self.vertex() for _ in range(self.params.r)]
        path = [s, *inner, t]
        for i in range(1, len(path)):
            self.arc(path[i - 1], path[i], 1)
            self.arc(path[i], path[i - 1], 1)

    def nested(
        self, depth: int, s: int, t: int
    ) -> Tuple[List[Tuple[int, int]], List[Tuple[int, ...]], List[Tuple[int, int]]]:
        """Emit G(depth, s, t); returns the column terminals, column arc ranges and rungs of this level"""
        r = self.params.r
        v = [self.vertex() for _ in range(r)]
        u = [self.vertex() for _ in range(r)]
        vs = [s, *v, t]
        us = [t, *u, s]
        rungs = []
        for i in range(1, r + 2):
            up = self.arc(us[i - 1], us[i], depth)
            down = self.arc(vs[i], vs[i - 1], depth)
            rungs.append((down, up))
        terminals = []
        column_arcs = []
        for i in range(1, r + 1):
            first = len(self.pairs)
            self.emit(depth - 1, us[i], vs[i])
            terminals.append((us[i], vs[i]))
            column_arcs.append(tuple(range(first, len(self.pairs))))
        return terminals, column_arcs, rungs

    def emit(self, depth: int, s: int, t: int) -> None:
        if depth == 1:
            self.bidirected_path(s, t)
        else:
            self.nested(depth, s, t)


def build_gap_instance(params: GapParams) -> GapInstance:
    """G(d, s, s) with vertices numbered in preorder of the recursion (the unified source is vertex 0)"""
    if params.r < params.d:
        logger.warning(f"r={params.r} < d={params.d}: the gap lower bound does not apply to these parameters")
    builder = _Builder(params)
    source = builder.vertex()
    terminals: List[Tuple[int, int]] = []
    column_arcs: List[Tuple[int, ...]] = []
    rungs: List[Tuple[int, int]] = []
    if params.d == 1:
        builder.bidirected_path(source, source)
    else:
        terminals, column_arcs, rungs = builder.nested(params.d, source, source)

    costs = [level_cost(params, level) for level in builder.levels]
    instance = Instance(
        n=builder.n,
        arcs=tuple(Arc(tail=t, head=h, cost=c) for (t, h), c in zip(builder.pairs, costs)),
        k=1,
    )
    gap = GapInstance(
        params=params,
        instance=instance,
        levels=tuple(builder.levels),
        source=source,
        column_terminals=tuple(terminals),
        column_arcs=tuple(column_arcs),
        ladder=tuple(rungs),
    )
    _check_structure(gap)
    logger.debug(f"Built G({params.d}, s, s) with r={params.r}: {instance.n} vertices, {instance.m} arcs")
    return gap


def _check_structure(gap: GapInstance) -> None:
    d, r = gap.params.d, gap.params.r
    for level in range(1, d + 1):
        arcs = gap.level_arcs(level)
        expected = 2 * (r + 1) * r ** (d - level)
        if len(arcs) != expected:
            raise InvariantViolation(f"level {level} has {len(arcs)} arcs, expected {expected}")
        if gap.instance.total_cost(arcs) != 1:
            raise InvariantViolation(f"level {level} does not cost exactly 1")


def classify_columns(gap: GapInstance, arcs: Iterable[int]) -> List[ColumnCase]:
    """Case of each top-level column i = 1..r with respect to the subgraph `arcs` (strongly connected)"""
    chosen = frozenset(arcs)
    instance = gap.instance
    top = gap.top_level_arcs() & chosen
    cases = []
    for i, (u, v) in enumerate(gap.column_terminals, start=1):
        at_u = sum(1 for a in top if u in (instance.arcs[a].tail, instance.arcs[a].head))
        at_v = sum(1 for a in top if v in (instance.arcs[a].tail, instance.arcs[a].head))
        if at_u + at_v >= 3:
            cases.append(ColumnCase.BRANCHING)
        elif at_u == 1 and at_v == 1:
            cases.append(ColumnCase.PASS_THROUGH)
        elif at_u + at_v == 2:
            cases.append(ColumnCase.ONE_SIDED)
        else:
            raise ValueError(f"column {i} meets {at_u + at_v} top-level arcs, the subgraph is not strongly connected")
    return cases


def check_pass_through_columns(gap: GapInstance, arcs: Iterable[int]) -> List[ColumnCase]:
    """At most one rung can be missing entirely, which leaves at most two pass-through columns"""
    cases = classify_columns(gap, arcs)
    count = sum(1 for case in cases if case == ColumnCase.PASS_THROUGH)
    if count > 2:
        raise InvariantViolation(f"{count} pass-through columns in a strongly connected subgraph")
    return cases


def opt_lower_bound(d: int, r: int) -> Fraction:
    """(3d - 1)/4 - 3d/r"""
    return Fraction(3 * d - 1, 4) - Fraction(3 * d, r)


def gap_lower_bound(d: int) -> Fraction:
    """3/2 - 8/d"""
    return Fraction(3, 2) - Fraction(8, d)


def all_halves(gap: GapInstance) -> List[Fraction]:
    return [Fraction(1, 2)] * gap.instance.m
