from fractions import Fraction

import pytest

from kacss.arb import CombinationTerm, ConvexCombination, Direction, decompose, is_k_arborescence
from kacss.errors import InvariantViolation
from kacss.graph import Instance
from kacss.lp import solve_lp_acss
from tests.unit.graphs import complete, cycle


@pytest.mark.parametrize("direction,expected", [(Direction.OUT, (0, 1, 2)), (Direction.IN, (1, 2, 3))])
def test_integral_point_decomposes_into_itself(direction: Direction, expected: tuple) -> None:
    combination = decompose(cycle(4), [Fraction(1)] * 4, 0, 1, direction)
    assert len(combination) == 1
    assert combination.terms[0].arcs == expected
    assert combination.weights == [1]


def test_halves_on_bidirected_triangle(triangle: Instance) -> None:
    x = [Fraction(1, 2)] * triangle.m
    for direction in Direction:
        combination = decompose(triangle, x, 0, 1, direction)
        assert combination.total_weight == 1
        assert combination.dominated_by(x)
        assert len(combination) <= triangle.m
        for i in range(len(combination)):
            assert is_k_arborescence(triangle, combination.term(i).arcs, 0, 1, direction)


@pytest.mark.parametrize("direction", list(Direction))
def test_lp_optimum_decomposes(direction: Direction) -> None:
    instance = complete(4, k=2)
    solution = solve_lp_acss(instance, root=2)
    combination = decompose(instance, solution, 2, 2, direction)
    assert combination.root == 2
    assert combination.k == 2
    assert combination.total_weight == 1
    assert combination.dominated_by(solution.x)
    assert all(w > 0 for w in combination.weights)
    for i in range(len(combination)):
        term = combination.term(i)
        assert is_k_arborescence(instance, term.arcs, 2, 2, direction)
        assert len(term) == 6


def test_point_outside_the_arborescence_polytope() -> None:
    with pytest.raises(InvariantViolation, match="below 1"):
        decompose(cycle(3), [Fraction(1, 2)] * 3, 0, 1, Direction.OUT)


def test_point_length_is_checked() -> None:
    with pytest.raises(ValueError):
        decompose(cycle(3), [Fraction(1)] * 2, 0, 1, Direction.OUT)


def test_single_vertex_has_the_empty_arborescence() -> None:
    combination = decompose(Instance(n=1, arcs=(), k=1), [], 0, 1, Direction.IN)
    assert combination.terms == [CombinationTerm(weight=Fraction(1), arcs=())]


def test_marginals_and_json() -> None:
    combination = ConvexCombination(
        root=0,
        k=1,
        direction=Direction.OUT,
        terms=[
            CombinationTerm(weight=Fraction(1, 3), arcs=(0, 1)),
            CombinationTerm.model_validate({"lambda": "2/3", "arcs": [1, 2]}),
        ],
    )
    assert combination.marginals(4) == [Fraction(1, 3), Fraction(1), Fraction(2, 3), Fraction(0)]
    assert combination.dominated_by([Fraction(1, 2), Fraction(1), Fraction(2, 3), Fraction(0)])
    assert not combination.dominated_by([Fraction(1, 4), Fraction(1), Fraction(1), Fraction(1)])
    assert combination.to_json_dict() == {
        "root": 0,
        "k": 1,
        "direction": "out",
        "terms": [{"lambda": "1/3", "arcs": [0, 1]}, {"lambda": "2/3", "arcs": [1, 2]}],
    }
