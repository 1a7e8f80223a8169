"""Exhaustive reference computations, only usable on a handful of vertices and arcs."""

from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from kacss.arb import Direction
from kacss.graph import Instance
from kacss.lp import LinearProgram, Relation


def proper_subsets(n: int) -> Iterator[FrozenSet[int]]:
    for size in range(1, n):
        for subset in combinations(range(n), size):
            yield frozenset(subset)


def min_cut_value(instance: Instance, capacities: Sequence[Fraction]) -> Optional[Fraction]:
    values = [instance.cut_value(subset, capacities) for subset in proper_subsets(instance.n)]
    return min(values) if values else None


def st_min_cut_value(instance: Instance, capacities: Sequence[Fraction], s: int, t: int) -> Fraction:
    separating = [subset for subset in proper_subsets(instance.n) if s in subset and t not in subset]
    return min(instance.cut_value(subset, capacities) for subset in separating)


def random_multigraph(rng: np.random.Generator, n: int, m: int, k: int = 1) -> Instance:
    pairs: List[Tuple[int, int]] = []
    while len(pairs) < m:
        tail, head = (int(v) for v in rng.integers(0, n, size=2))
        if tail != head:
            pairs.append((tail, head))
    return Instance.from_pairs(n, pairs, k=k)


def indicator(instance: Instance, arcs: Sequence[int]) -> List[Fraction]:
    chosen = set(arcs)
    return [Fraction(1) if a in chosen else Fraction(0) for a in range(instance.m)]


def k_arc_connected(instance: Instance, arcs: Sequence[int], k: int) -> bool:
    value = min_cut_value(instance, indicator(instance, arcs))
    return value is None or value >= k


def contains_k_arborescence(instance: Instance, arcs: Sequence[int], root: int, k: int, direction: Direction) -> bool:
    capacities = indicator(instance, arcs)
    for subset in proper_subsets(instance.n):
        if root not in subset:
            continue
        if direction == Direction.OUT:
            covered = instance.cut_value(subset, capacities)
        else:
            covered = instance.cut_value(frozenset(range(instance.n)) - subset, capacities)
        if covered < k:
            return False
    return True


def min_weight_k_arborescence(
    instance: Instance, weights: Sequence[Fraction], root: int, k: int, direction: Direction
) -> Fraction:
    best: Optional[Fraction] = None
    # every non-root vertex needs k arcs on its side of the root, so smaller sets never qualify
    for size in range(k * (instance.n - 1), instance.m + 1):
        for arcs in combinations(range(instance.m), size):
            weight = sum((weights[a] for a in arcs), Fraction(0))
            if best is not None and weight >= best:
                continue
            if contains_k_arborescence(instance, arcs, root, k, direction):
                best = weight
    assert best is not None
    return best


def min_cost_k_arc_connected(instance: Instance) -> Fraction:
    best: Optional[Fraction] = None
    for size in range(instance.m + 1):
        for arcs in combinations(range(instance.m), size):
            cost = instance.total_cost(arcs)
            if best is not None and cost >= best:
                continue
            if k_arc_connected(instance, arcs, instance.k):
                best = cost
    assert best is not None
    return best


def _to_fraction(value: sympy.Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def best_vertex_objective(lp: LinearProgram) -> Optional[Fraction]:
    """Enumerate every basic point of a bounded LP; None when no basic point is feasible"""
    hyperplanes = []
    for row in lp.rows:
        dense = [sympy.Rational(0)] * lp.num_vars
        for j, a in row.coefficients.items():
            dense[j] = sympy.Rational(a.numerator, a.denominator)
        hyperplanes.append((dense, sympy.Rational(row.rhs.numerator, row.rhs.denominator)))
    for j in range(lp.num_vars):
        for bound in (lp.lower[j], lp.upper[j]):
            if bound is not None:
                unit = [sympy.Rational(0)] * lp.num_vars
                unit[j] = sympy.Rational(1)
                hyperplanes.append((unit, sympy.Rational(bound.numerator, bound.denominator)))

    best: Optional[Fraction] = None
    for chosen in combinations(hyperplanes, lp.num_vars):
        matrix = sympy.Matrix([coefficients for coefficients, _ in chosen])
        if matrix.det() == 0:
            continue
        solution = matrix.LUsolve(sympy.Matrix([rhs for _, rhs in chosen]))
        x = [_to_fraction(value) for value in solution]
        if any(not row.is_satisfied(x) for row in lp.rows):
            continue
        if any(
            (low is not None and value < low) or (high is not None and value > high)
            for value, low, high in zip(x, lp.lower, lp.upper)
        ):
            continue
        value = lp.objective_value(x)
        if best is None or (value < best if lp.sense.value == "min" else value > best):
            best = value
    return best


def relation_of(code: int) -> Relation:
    return [Relation.GE, Relation.LE, Relation.EQ][code]
