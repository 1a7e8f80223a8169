import logging
from fractions import Fraction

import pytest

from kacss.config import CuttingPlaneSettings
from kacss.errors import InfeasibleInstanceError
from kacss.flow import min_violated_cut
from kacss.graph import Instance, random_k_connected
from kacss.lp import (
    FractionalSolution,
    LinearProgram,
    Relation,
    Row,
    degree_lower_bound_holds,
    fractional_support,
    solve,
    solve_lp_acss,
    sparsity_holds,
)
from tests.unit import oracles
from tests.unit.graphs import bidirected, complete, cycle, path


@pytest.mark.parametrize("root", [0, 2, 4])
def test_cycle_needs_every_arc(cycle5: Instance, root: int) -> None:
    solution = solve_lp_acss(cycle5, root=root)
    assert solution.x == [1] * 5
    assert solution.value == 5
    assert solution.root == root
    assert fractional_support(solution) == frozenset()


def test_bidirected_triangle(triangle: Instance) -> None:
    solution = solve_lp_acss(triangle)
    assert solution.value == 3
    assert min_violated_cut(triangle, solution.x, 0, 1) is None
    assert degree_lower_bound_holds(solution, triangle)
    assert sparsity_holds(solution, triangle)


def test_two_connected_complete_graph() -> None:
    instance = complete(4, k=2)
    solution = solve_lp_acss(instance)
    assert solution.value == 8
    assert solution.total == 8
    assert min_violated_cut(instance, solution.x, 0, 2) is None


def test_weighted_costs_pick_the_cheap_direction() -> None:
    costs = [Fraction(2)] * 3 + [Fraction(1, 3)] * 3
    solution = solve_lp_acss(bidirected(3, costs=costs))
    assert solution.value == 1
    assert solution.x == [0, 0, 0, 1, 1, 1]


def test_without_seeded_degree_cuts(triangle: Instance) -> None:
    settings = CuttingPlaneSettings(seed_degree_cuts=False)
    solution = solve_lp_acss(triangle, settings=settings)
    assert solution.value == 3
    assert solution.transcript.iterations == len(solution.cuts) + 1
    assert solution.transcript.objectives[-1] == solution.value


@pytest.mark.parametrize("seed", range(4))
def test_value_is_below_integer_optimum(seed: int) -> None:
    instance = random_k_connected(4, 1, 3, seed=seed)
    solution = solve_lp_acss(instance)
    optimum = oracles.min_cost_k_arc_connected(instance)
    assert instance.n <= solution.value <= optimum
    assert all(0 <= value <= 1 for value in solution.x)


def test_fixings_are_respected() -> None:
    instance = bidirected(4)
    solution = solve_lp_acss(instance, fixings={0: 1, 1: 0})
    assert solution.x[0] == 1
    assert solution.x[1] == 0
    assert min_violated_cut(instance, solution.x, 0, 1) is None


def test_fixing_a_bridge_out_is_infeasible() -> None:
    with pytest.raises(InfeasibleInstanceError) as error:
        solve_lp_acss(cycle(4), fixings={0: 0})
    assert error.value.cut.value == 0


def test_instance_that_is_not_connected() -> None:
    with pytest.raises(InfeasibleInstanceError, match="not 1-arc-connected"):
        solve_lp_acss(path(3))


@pytest.mark.parametrize("kwargs", [{"root": 5}, {"fixings": {9: 1}}, {"fixings": {0: 2}}])
def test_invalid_arguments(cycle5: Instance, kwargs: dict) -> None:
    with pytest.raises(ValueError):
        solve_lp_acss(cycle5, **kwargs)


def test_single_vertex() -> None:
    solution = solve_lp_acss(Instance(n=1, arcs=(), k=2))
    assert solution.value == 0
    assert solution.x == []


def test_sparsity_warning(caplog: pytest.LogCaptureFixture) -> None:
    instance = Instance.from_pairs(2, [(0, 1)] * 5 + [(1, 0)] * 5)
    solution = FractionalSolution(x=[Fraction(1, 5)] * 10, value=Fraction(2))
    assert fractional_support(solution) == frozenset(range(10))
    with caplog.at_level(logging.WARNING):
        assert not sparsity_holds(solution, instance)
    assert "more than 4n" in caplog.text
    assert not degree_lower_bound_holds(solution, instance.with_k(3))


def test_solution_serializes_rationals(cycle5: Instance) -> None:
    payload = solve_lp_acss(cycle5).model_dump(mode="json")
    assert payload["value"] == "5/1"
    assert payload["x"] == ["1/1"] * 5


def _rebuilt_value(instance: Instance, solution: FractionalSolution) -> Fraction:
    rows = []
    for vertices in solution.row_sets():
        leaving = instance.delta_out(frozenset(vertices))
        rows.append(Row(coefficients={a: Fraction(1) for a in leaving}, relation=Relation.GE, rhs=instance.k))
    rebuilt = solve(LinearProgram.boxed(instance.costs, rows))
    assert rebuilt.objective is not None
    return rebuilt.objective


def test_seeded_rows_are_reported(triangle: Instance) -> None:
    solution = solve_lp_acss(triangle)
    # on three vertices the degree rows already cover every proper vertex set
    assert len(solution.seeded_cuts) == 6
    assert solution.cuts == []
    assert all(cut.value >= 1 for cut in solution.seeded_cuts)
    assert _rebuilt_value(triangle, solution) == solution.value


def test_reported_rows_rebuild_the_restricted_lp() -> None:
    instance = complete(4, k=2)
    solution = solve_lp_acss(instance)
    row_sets = solution.row_sets()
    assert len(solution.seeded_cuts) == 8
    assert len(row_sets) == len(set(row_sets)) == 8 + len(solution.cuts)
    assert _rebuilt_value(instance, solution) == solution.value
    without_seeds = solve_lp_acss(instance, settings=CuttingPlaneSettings(seed_degree_cuts=False))
    assert without_seeds.seeded_cuts == []
    assert without_seeds.row_sets() == [cut.vertices for cut in without_seeds.cuts]
