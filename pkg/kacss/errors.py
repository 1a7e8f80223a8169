from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, FrozenSet, Optional

if TYPE_CHECKING:
    from kacss.flow import CutCertificate


class KacssError(Exception):
    """Base class for all errors raised by kacss."""


class InstanceFormatError(KacssError):
    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line_number = line_number


class InfeasibleInstanceError(KacssError):
    """The instance (or the non-excluded part of it) is not k-arc-connected."""

    def __init__(self, message: str, cut: CutCertificate) -> None:
        super().__init__(f"{message}: cut {list(cut.vertices)} has value {cut.value}")
        self.cut = cut


class SolverError(KacssError):
    pass


class InvariantViolation(KacssError):
    """A guarantee the algorithms rely on did not hold; indicates a bug or invalid input data."""


class GenerationError(KacssError):
    pass


class SearchBudgetExceeded(KacssError):
    def __init__(self, nodes: int, incumbent: Optional[Fraction], incumbent_arcs: Optional[FrozenSet[int]]) -> None:
        super().__init__(f"branch-and-bound budget of {nodes} nodes exhausted (incumbent {incumbent})")
        self.nodes = nodes
        self.incumbent = incumbent
        self.incumbent_arcs = incumbent_arcs
