from fractions import Fraction

import pytest

from kacss.cli import export_dot
from kacss.gap import GapParams, build_gap_instance
from tests.unit.graphs import bidirected


def test_highlighted_arcs_are_bold() -> None:
    instance = bidirected(3, costs=[Fraction(1, 2)] * 6)
    text = export_dot(instance, highlight=[0, 4]).decode("utf-8")
    lines = text.splitlines()
    assert lines[0] == "digraph kacss {"
    assert lines[-1] == "}"
    assert '  0 -> 1 [label="0: 1/2", style=bold, color="black"];' in lines
    assert '  1 -> 2 [label="1: 1/2", color="grey"];' in lines
    assert '  2 -> 1 [label="4: 1/2", style=bold, color="black"];' in lines
    assert sum(1 for line in lines if "->" in line) == 6


def test_levels_are_labelled() -> None:
    instance = bidirected(2)
    text = export_dot(instance, levels=[1, 1, 2, 2], name="gap").decode("utf-8")
    assert text.startswith("digraph gap {")
    assert '[label="3: 1/1 (level 2)", color="grey"]' in text


def test_gap_instance_with_top_level_highlight() -> None:
    gap = build_gap_instance(GapParams(d=2, r=3))
    lines = export_dot(gap.instance, highlight=gap.top_level_arcs(), levels=gap.levels).decode("utf-8").splitlines()
    assert sum(1 for line in lines if line.strip().rstrip(";").isdigit()) == 16
    assert sum(1 for line in lines if "->" in line) == 32
    assert sum(1 for line in lines if "style=bold" in line) == 8


def test_empty_highlight_draws_everything_grey() -> None:
    text = export_dot(bidirected(2), highlight=[]).decode("utf-8")
    assert "style=bold" not in text
    assert text.count('color="grey"') == 4


def test_highlight_outside_the_instance_is_rejected() -> None:
    with pytest.raises(ValueError, match=r"\[6\] are out of range for 6 arcs"):
        export_dot(bidirected(3), highlight=[0, 6])
