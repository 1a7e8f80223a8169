from fractions import Fraction
from typing import Optional, Sequence

import pytest

from kacss.config import CuttingPlaneSettings
from kacss.errors import InvariantViolation, SolverError
from kacss.flow import CutCertificate, min_violated_cut
from kacss.lp import CuttingPlaneDriver
from tests.unit.graphs import bidirected, cycle


def test_driver_converges_on_cycle() -> None:
    instance = cycle(3)

    def separate(x: Sequence[Fraction]) -> Optional[CutCertificate]:
        return min_violated_cut(instance, x, 0, 1)

    driver = CuttingPlaneDriver(instance, instance.costs, 1, separate)
    solution = driver.run()
    assert solution.primal == [1, 1, 1]
    assert solution.objective == 3
    assert driver.transcript.iterations == len(driver.transcript.cuts) + 1
    assert driver.transcript.objectives[-1] == 3
    assert driver.transcript.objectives == sorted(driver.transcript.objectives)
    assert [list(cut.vertices) for cut in driver.separated] == driver.transcript.cuts


def test_rows_are_deduplicated() -> None:
    instance = bidirected(3)
    driver = CuttingPlaneDriver(instance, instance.costs, 1, lambda x: None)
    assert driver.add_cut([0, 1])
    assert not driver.add_cut([1, 0, 1])
    assert len(driver.rows) == 1
    assert sorted(driver.rows[0].coefficients) == instance.delta_out({0, 1})


def test_repeated_cut_is_an_invariant_violation() -> None:
    instance = cycle(3)
    cut = CutCertificate(vertices=(0,), value=Fraction(0))
    driver = CuttingPlaneDriver(instance, instance.costs, 1, lambda x: cut)
    with pytest.raises(InvariantViolation):
        driver.run()


def test_round_cap() -> None:
    instance = cycle(4)

    def separate(x: Sequence[Fraction]) -> Optional[CutCertificate]:
        return min_violated_cut(instance, x, 0, 1)

    driver = CuttingPlaneDriver(instance, instance.costs, 1, separate, settings=CuttingPlaneSettings(max_rounds=1))
    with pytest.raises(SolverError, match="did not converge"):
        driver.run()


def test_infeasible_restricted_lp() -> None:
    instance = cycle(3)
    driver = CuttingPlaneDriver(instance, instance.costs, 2, lambda x: None)
    driver.add_cut([0])
    with pytest.raises(SolverError, match="infeasible"):
        driver.run()


def test_weight_length_is_checked() -> None:
    with pytest.raises(ValueError):
        CuttingPlaneDriver(cycle(3), [Fraction(1)], 1, lambda x: None)
