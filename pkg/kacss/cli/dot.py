from __future__ import annotations

from typing import Iterable, Optional, Sequence

from kacss.core import format_fraction
from kacss.graph import Instance


def export_dot(
    instance: Instance,
    highlight: Optional[Iterable[int]] = None,
    levels: Optional[Sequence[int]] = None,
    name: str = "kacss",
) -> bytes:
    """DOT digraph of the instance; highlighted arcs are drawn bold and black, the rest grey"""
    chosen = instance.validate_arc_set(highlight if highlight is not None else ())
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    lines.extend(f"  {v};" for v in range(instance.n))
    for index, arc in enumerate(instance.arcs):
        label = f"{index}: {format_fraction(arc.cost)}"
        if levels is not None:
            label += f" (level {levels[index]})"
        style = 'style=bold, color="black"' if index in chosen else 'color="grey"'
        lines.append(f'  {arc.tail} -> {arc.head} [label="{label}", {style}];')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")
