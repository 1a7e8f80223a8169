from fractions import Fraction

from kacss.config import Config
from kacss.gap import exact_opt
from kacss.graph import Instance
from kacss.rounding import NO_GUARANTEE, RoundingMode, solve_pipeline


def test_wheel_keeps_only_the_bidirected_cycle(wheel4: Instance, default_config: Config) -> None:
    result = solve_pipeline(wheel4, config=default_config)
    assert result.solution.value == 8
    assert result.report.arcs == list(range(8))
    assert result.report.ratio == 1
    assert exact_opt(wheel4).value == 8


def test_weighted_instance_prefers_the_shortcuts(weighted5: Instance, default_config: Config) -> None:
    expected = Fraction(77, 6)
    result = solve_pipeline(weighted5, mode=RoundingMode.SAMPLED, seed=5, config=default_config)
    assert result.solution.value == expected
    assert result.report.size == expected
    assert result.report.guarantee == NO_GUARANTEE
    assert result.report.arcs == [0, 1, 2, 3, 6, 8]
    assert exact_opt(weighted5).value == expected
