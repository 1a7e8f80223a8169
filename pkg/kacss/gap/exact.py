from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional

import networkx as nx
from kacss.config import BranchAndBoundSettings, CuttingPlaneSettings, SimplexSettings
from kacss.core import Rational
from kacss.errors import InfeasibleInstanceError, SearchBudgetExceeded
from kacss.flow import flow_at_least, is_k_arc_connected, min_violated_cut
from kacss.graph import ArcSet, Instance
from kacss.lp import solve_lp_acss
from pydantic import BaseModel

logger = logging.getLogger(__name__)

Status = List[Optional[bool]]
"""Per-arc decision: True included, False excluded, None open."""


class ExactOptResult(BaseModel):
    value: Rational
    arcs: List[int]
    nodes: int


class _BranchAndBound:
    """Depth-first search over arc inclusion with degree, propagation and optional LP bounds.

    Open arcs are branched in order of decreasing cost (then index), exclusion first.
    """

    def __init__(
        self,
        instance: Instance,
        upper_hint: Optional[Fraction],
        settings: BranchAndBoundSettings,
        cutting_plane_settings: Optional[CuttingPlaneSettings],
        simplex_settings: Optional[SimplexSettings],
    ) -> None:
        self.instance = instance
        self.k = instance.k
        self.upper_hint = upper_hint
        self.settings = settings
        self.cutting_plane_settings = cutting_plane_settings
        self.simplex_settings = simplex_settings
        self.nodes = 0
        self.best_value: Optional[Fraction] = None
        self.best_arcs: Optional[ArcSet] = None

    def connected(self, arcs: Iterable[int]) -> bool:
        if self.k == 1:
            graph = nx.MultiDiGraph()
            graph.add_nodes_from(range(self.instance.n))
            graph.add_edges_from((self.instance.arcs[a].tail, self.instance.arcs[a].head) for a in arcs)
            return bool(nx.is_strongly_connected(graph))
        return is_k_arc_connected(self.instance, arcs, self.k)

    def _is_bridge(self, available: ArcSet, arc: int) -> bool:
        """Whether dropping `arc` from a k-arc-connected arc set breaks k-arc-connectivity"""
        tail, head = self.instance.arcs[arc].tail, self.instance.arcs[arc].head
        rest = available - {arc}
        if self.k == 1:
            graph = nx.MultiDiGraph()
            graph.add_nodes_from(range(self.instance.n))
            graph.add_edges_from((self.instance.arcs[a].tail, self.instance.arcs[a].head) for a in rest)
            return not nx.has_path(graph, tail, head)
        capacities = [Fraction(1) if a in rest else Fraction(0) for a in range(self.instance.m)]
        return not flow_at_least(self.instance, capacities, tail, head, Fraction(self.k))

    def record(self, value: Fraction, arcs: Iterable[int], source: str) -> None:
        if self.best_value is None or value < self.best_value:
            self.best_value = value
            self.best_arcs = frozenset(arcs)
            logger.debug(f"New incumbent {value} from {source} after {self.nodes} nodes")

    def greedy_incumbent(self) -> None:
        """Reverse delete: drop the most expensive arcs first while connectivity survives"""
        kept = set(range(self.instance.m))
        for a in sorted(kept, key=lambda a: (-self.instance.arcs[a].cost, a)):
            kept.discard(a)
            if not self.connected(kept):
                kept.add(a)
        self.record(self.instance.total_cost(kept), kept, "reverse delete")

    def degree_bound(self, status: Status) -> Fraction:
        """Cheapest completion of every vertex to k included leaving (resp. entering) arcs"""
        bounds = []
        for arcs_at in (self.instance.out_arcs, self.instance.in_arcs):
            total = Fraction(0)
            for v in range(self.instance.n):
                arcs = arcs_at(v)
                need = self.k - sum(1 for a in arcs if status[a] is True)
                if need > 0:
                    open_costs = sorted(self.instance.arcs[a].cost for a in arcs if status[a] is None)
                    total += sum(open_costs[:need], Fraction(0))
            bounds.append(total)
        return max(bounds)

    def lp_bound(self, status: Status) -> Fraction:
        fixings: Dict[int, int] = {a: int(decided) for a, decided in enumerate(status) if decided is not None}
        solution = solve_lp_acss(
            self.instance,
            fixings=fixings,
            settings=self.cutting_plane_settings,
            simplex_settings=self.simplex_settings,
        )
        return solution.value

    def pruned(self, bound: Fraction) -> bool:
        if self.best_value is not None and bound >= self.best_value:
            return True
        return self.upper_hint is not None and bound > self.upper_hint

    def visit(self, status: Status, depth: int) -> None:
        self.nodes += 1
        if self.nodes > self.settings.node_budget:
            raise SearchBudgetExceeded(self.settings.node_budget, self.best_value, self.best_arcs)
        if self.nodes % self.settings.progress_interval == 0:
            logger.debug(f"Branch and bound: {self.nodes} nodes, depth {depth}, incumbent {self.best_value}")

        available = frozenset(a for a, decided in enumerate(status) if decided is not False)
        if not self.connected(available):
            return
        for a in range(self.instance.m):
            if status[a] is None and self._is_bridge(available, a):
                status[a] = True

        included = [a for a, decided in enumerate(status) if decided is True]
        included_cost = self.instance.total_cost(included)
        bound = included_cost + self.degree_bound(status)
        if self.pruned(bound):
            return
        if depth <= self.settings.lp_bound_max_depth:
            bound = max(bound, self.lp_bound(status))
            if self.pruned(bound):
                return

        open_arcs = [a for a, decided in enumerate(status) if decided is None]
        if not open_arcs or (bound == included_cost and self.connected(included)):
            # open arcs only add cost once the included ones are connected
            self.record(included_cost, included, "search")
            return

        branch = min(open_arcs, key=lambda a: (-self.instance.arcs[a].cost, a))
        for decision in (False, True):
            child = list(status)
            child[branch] = decision
            self.visit(child, depth + 1)


def exact_opt(
    instance: Instance,
    upper_hint: Optional[Fraction] = None,
    settings: Optional[BranchAndBoundSettings] = None,
    cutting_plane_settings: Optional[CuttingPlaneSettings] = None,
    simplex_settings: Optional[SimplexSettings] = None,
) -> ExactOptResult:
    """Minimum-cost k-arc-connected spanning subgraph by branch and bound.

    Raises SearchBudgetExceeded carrying the incumbent when the node budget runs out.
    """
    settings = settings or BranchAndBoundSettings()
    if not is_k_arc_connected(instance, range(instance.m), instance.k):
        witness = min_violated_cut(instance, [Fraction(1)] * instance.m, 0, instance.k)
        assert witness is not None
        raise InfeasibleInstanceError(f"instance is not {instance.k}-arc-connected", witness)

    search = _BranchAndBound(instance, upper_hint, settings, cutting_plane_settings, simplex_settings)
    search.greedy_incumbent()
    search.visit([None] * instance.m, 0)
    assert search.best_value is not None and search.best_arcs is not None
    if upper_hint is not None and search.best_value > upper_hint:
        # nothing within the hint exists, so the incumbent is unproven
        logger.warning(f"Upper hint {upper_hint} is below the optimum, searching again without it")
        return exact_opt(instance, None, settings, cutting_plane_settings, simplex_settings)
    logger.info(f"Exact optimum {search.best_value} with {len(search.best_arcs)} arcs after {search.nodes} nodes")
    return ExactOptResult(value=search.best_value, arcs=sorted(search.best_arcs), nodes=search.nodes)
