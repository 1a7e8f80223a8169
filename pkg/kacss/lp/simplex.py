from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

import sympy
from kacss.config import SimplexSettings
from kacss.core import Rational
from kacss.errors import InvariantViolation, SolverError
from pydantic import BaseModel, ConfigDict, model_validator

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


class Relation(str, Enum):
    GE = ">="
    LE = "<="
    EQ = "="


class Sense(str, Enum):
    MIN = "min"
    MAX = "max"


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class Row(BaseModel):
    model_config = ConfigDict(frozen=True)

    coefficients: Dict[int, Rational]
    relation: Relation
    rhs: Rational

    def activity(self, x: Sequence[Fraction]) -> Fraction:
        return sum((value * x[j] for j, value in self.coefficients.items()), ZERO)

    def is_satisfied(self, x: Sequence[Fraction]) -> bool:
        activity = self.activity(x)
        if self.relation == Relation.GE:
            return activity >= self.rhs
        if self.relation == Relation.LE:
            return activity <= self.rhs
        return activity == self.rhs

    def is_tight(self, x: Sequence[Fraction]) -> bool:
        return self.activity(x) == self.rhs


class LinearProgram(BaseModel):
    """Optimize objective . x subject to rows and per-variable bounds (None stands for an infinite bound)."""

    model_config = ConfigDict(frozen=True)

    num_vars: int
    objective: List[Rational]
    sense: Sense = Sense.MIN
    rows: List[Row] = []
    lower: List[Optional[Rational]]
    upper: List[Optional[Rational]]

    @model_validator(mode="after")
    def check_shapes(self) -> LinearProgram:
        if len(self.objective) != self.num_vars:
            raise ValueError(f"objective has {len(self.objective)} entries for {self.num_vars} variables")
        if len(self.lower) != self.num_vars or len(self.upper) != self.num_vars:
            raise ValueError("bounds must be given for every variable")
        for j, (low, high) in enumerate(zip(self.lower, self.upper)):
            if low is not None and high is not None and low > high:
                raise ValueError(f"variable {j} has lower bound {low} above upper bound {high}")
        for i, row in enumerate(self.rows):
            for j in row.coefficients:
                if not 0 <= j < self.num_vars:
                    raise ValueError(f"row {i} references variable {j} outside 0..{self.num_vars - 1}")
        return self

    @classmethod
    def boxed(
        cls,
        objective: Sequence[Fraction],
        rows: Sequence[Row],
        lower: Fraction = ZERO,
        upper: Optional[Fraction] = Fraction(1),
        sense: Sense = Sense.MIN,
    ) -> LinearProgram:
        """Every variable shares the same bounds, [0, 1] unless told otherwise"""
        n = len(objective)
        return cls(
            num_vars=n,
            objective=list(objective),
            sense=sense,
            rows=list(rows),
            lower=[lower] * n,
            upper=[upper] * n,
        )

    def objective_value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * value for c, value in zip(self.objective, x)), ZERO)


class VertexSolution(BaseModel):
    status: SolveStatus
    primal: List[Rational] = []
    objective: Optional[Rational] = None
    duals: List[Rational] = []
    basis: List[str] = []
    iterations: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == SolveStatus.OPTIMAL


class _Column:
    """Internal non-negative column: original variable `var` contributes `sign` * column (+ offset elsewhere)."""

    __slots__ = ("var", "sign", "label")

    def __init__(self, var: int, sign: int, label: str) -> None:
        self.var = var
        self.sign = sign
        self.label = label


class _Tableau:
    """Bounded-variable simplex tableau over exact rationals with Bland's smallest-index rule.

    All internal columns have lower bound 0; nonbasic columns sit at 0 or at their (finite) upper bound.
    Rows are stored sparsely as {column: coefficient} and hold B^-1 A.
    """

    def __init__(
        self,
        rows: List[Dict[int, Fraction]],
        rhs: List[Fraction],
        basis: List[int],
        upper: List[Optional[Fraction]],
        max_iterations: int,
    ) -> None:
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.upper = upper
        self.at_upper: Set[int] = set()
        self.reduced: Dict[int, Fraction] = {}
        self.max_iterations = max_iterations
        self.iterations = 0

    @property
    def num_columns(self) -> int:
        return len(self.upper)

    def set_costs(self, costs: List[Fraction]) -> None:
        reduced = {j: c for j, c in enumerate(costs) if c != 0}
        for i, b in enumerate(self.basis):
            cb = costs[b]
            if cb == 0:
                continue
            for j, a in self.rows[i].items():
                value = reduced.get(j, ZERO) - cb * a
                if value == 0:
                    reduced.pop(j, None)
                else:
                    reduced[j] = value
        self.reduced = reduced

    def basic_values(self) -> List[Fraction]:
        values = list(self.rhs)
        if self.at_upper:
            for i, row in enumerate(self.rows):
                for j in self.at_upper:
                    a = row.get(j)
                    if a is not None:
                        values[i] -= a * self.upper[j]  # type: ignore[operator]
        return values

    def column_values(self) -> List[Fraction]:
        values = [ZERO] * self.num_columns
        for j in self.at_upper:
            values[j] = self.upper[j]  # type: ignore[assignment]
        for i, value in enumerate(self.basic_values()):
            values[self.basis[i]] = value
        return values

    def objective_value(self, costs: List[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(costs, self.column_values()) if c != 0), ZERO)

    def _entering(self) -> Optional[int]:
        basic = set(self.basis)
        candidates = []
        for j, d in self.reduced.items():
            if j in basic or self.upper[j] == 0:
                continue
            if (j in self.at_upper and d > 0) or (j not in self.at_upper and d < 0):
                candidates.append(j)
        return min(candidates) if candidates else None

    def pivot(self, r: int, j: int) -> None:
        pivot_row = self.rows[r]
        factor = pivot_row[j]
        if factor != 1:
            pivot_row = {col: value / factor for col, value in pivot_row.items()}
            self.rows[r] = pivot_row
            self.rhs[r] /= factor
        pivot_rhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(j)
            if f is None:
                continue
            for col, value in pivot_row.items():
                updated = row.get(col, ZERO) - f * value
                if updated == 0:
                    row.pop(col, None)
                else:
                    row[col] = updated
            self.rhs[i] -= f * pivot_rhs
        d = self.reduced.get(j)
        if d is not None:
            for col, value in pivot_row.items():
                updated = self.reduced.get(col, ZERO) - d * value
                if updated == 0:
                    self.reduced.pop(col, None)
                else:
                    self.reduced[col] = updated
        self.basis[r] = j

    def step(self) -> Optional[SolveStatus]:
        """One Bland iteration; returns a final status or None to continue"""
        j = self._entering()
        if j is None:
            return SolveStatus.OPTIMAL

        increasing = j not in self.at_upper
        direction = 1 if increasing else -1
        values = self.basic_values()

        best_ratio: Optional[Fraction] = None
        best_row = -1
        leaves_at_upper = False
        for i, row in enumerate(self.rows):
            a = row.get(j)
            if a is None:
                continue
            rate = a * direction
            b = self.basis[i]
            if rate > 0:
                ratio = values[i] / rate
                to_upper = False
            else:
                bound = self.upper[b]
                if bound is None:
                    continue
                ratio = (bound - values[i]) / -rate
                to_upper = True
            if best_ratio is None or ratio < best_ratio or (ratio == best_ratio and b < self.basis[best_row]):
                best_ratio, best_row, leaves_at_upper = ratio, i, to_upper

        flip = self.upper[j]
        if flip is not None and (best_ratio is None or flip <= best_ratio):
            # entering column moves to its opposite bound without a basis change
            if increasing:
                self.at_upper.add(j)
            else:
                self.at_upper.discard(j)
            return None
        if best_ratio is None:
            return SolveStatus.UNBOUNDED

        leaving = self.basis[best_row]
        self.at_upper.discard(j)
        self.pivot(best_row, j)
        if leaves_at_upper:
            self.at_upper.add(leaving)
        return None

    def run(self) -> SolveStatus:
        while True:
            if self.iterations >= self.max_iterations:
                raise SolverError(f"simplex iteration cap of {self.max_iterations} exceeded")
            self.iterations += 1
            status = self.step()
            if status is not None:
                return status


def _internal_columns(lp: LinearProgram) -> Tuple[List[_Column], List[Fraction], List[Optional[Fraction]]]:
    """Map every original variable onto non-negative internal columns plus a constant offset"""
    columns: List[_Column] = []
    offsets: List[Fraction] = []
    upper: List[Optional[Fraction]] = []
    for j in range(lp.num_vars):
        low, high = lp.lower[j], lp.upper[j]
        if low is not None:
            columns.append(_Column(j, 1, f"x{j}"))
            offsets.append(low)
            upper.append(None if high is None else high - low)
        elif high is not None:
            columns.append(_Column(j, -1, f"x{j}"))
            offsets.append(high)
            upper.append(None)
        else:
            columns.append(_Column(j, 1, f"x{j}+"))
            columns.append(_Column(j, -1, f"x{j}-"))
            offsets.append(ZERO)
            upper.extend([None, None])
    return columns, offsets, upper


def solve(lp: LinearProgram, settings: Optional[SimplexSettings] = None) -> VertexSolution:
    """Two-phase bounded-variable simplex with Bland's rule, exact over rationals.

    Returns an optimal basic solution with shadow-price duals (d objective / d rhs for every row).
    """
    settings = settings or SimplexSettings()
    columns, offsets, upper = _internal_columns(lp)
    num_structural = len(columns)
    columns_of: Dict[int, List[int]] = {}
    for c, column in enumerate(columns):
        columns_of.setdefault(column.var, []).append(c)

    rows: List[Dict[int, Fraction]] = []
    rhs: List[Fraction] = []
    row_sign: List[int] = []
    slack_of: Dict[int, int] = {}
    labels = [column.label for column in columns]
    for i, row in enumerate(lp.rows):
        internal: Dict[int, Fraction] = {}
        b = row.rhs
        for j, a in row.coefficients.items():
            if a == 0:
                continue
            b -= a * offsets[j]
            for c in columns_of[j]:
                internal[c] = a * columns[c].sign
        if row.relation != Relation.EQ:
            slack = len(upper)
            upper.append(None)
            labels.append(f"s{i}")
            internal[slack] = Fraction(-1) if row.relation == Relation.GE else Fraction(1)
            slack_of[i] = slack
        sign = -1 if b < 0 else 1
        if sign < 0:
            internal = {c: -a for c, a in internal.items()}
            b = -b
        rows.append(internal)
        rhs.append(b)
        row_sign.append(sign)

    num_original_columns = len(upper)
    basis: List[int] = []
    initial: List[int] = []
    artificials: List[int] = []
    for i, internal in enumerate(rows):
        slack = slack_of.get(i)
        if slack is not None and internal[slack] == 1:
            basis.append(slack)
        else:
            artificial = len(upper)
            upper.append(None)
            labels.append(f"a{i}")
            internal[artificial] = Fraction(1)
            basis.append(artificial)
            artificials.append(artificial)
        initial.append(basis[-1])

    tableau = _Tableau(rows, rhs, basis, upper, settings.max_iterations)

    if artificials:
        phase_one_costs = [ZERO] * len(upper)
        for a in artificials:
            phase_one_costs[a] = Fraction(1)
        tableau.set_costs(phase_one_costs)
        tableau.run()
        infeasibility = tableau.objective_value(phase_one_costs)
        if infeasibility > 0:
            logger.debug(f"Phase one ended with infeasibility {infeasibility} after {tableau.iterations} iterations")
            return VertexSolution(status=SolveStatus.INFEASIBLE, iterations=tableau.iterations)
        _drive_out_artificials(tableau, set(artificials), num_original_columns)
        for a in artificials:
            upper[a] = ZERO

    sense_sign = 1 if lp.sense == Sense.MIN else -1
    costs = [ZERO] * len(upper)
    for c in range(num_structural):
        costs[c] = sense_sign * lp.objective[columns[c].var] * columns[c].sign
    tableau.set_costs(costs)
    status = tableau.run()
    if status == SolveStatus.UNBOUNDED:
        logger.debug(f"Unbounded direction found after {tableau.iterations} iterations")
        return VertexSolution(status=status, iterations=tableau.iterations)

    values = tableau.column_values()
    primal = list(offsets)
    for c in range(num_structural):
        primal[columns[c].var] += columns[c].sign * values[c]

    duals = []
    for i in range(len(lp.rows)):
        internal_dual = -tableau.reduced.get(initial[i], ZERO)
        duals.append(sense_sign * row_sign[i] * internal_dual)

    solution = VertexSolution(
        status=SolveStatus.OPTIMAL,
        primal=primal,
        objective=lp.objective_value(primal),
        duals=duals,
        basis=[labels[b] for b in tableau.basis],
        iterations=tableau.iterations,
    )
    verify_optimality(lp, solution)
    logger.debug(
        f"Solved LP with {lp.num_vars} variables and {len(lp.rows)} rows: "
        f"objective {solution.objective} in {tableau.iterations} iterations"
    )
    return solution


def _drive_out_artificials(tableau: _Tableau, artificials: Set[int], num_original_columns: int) -> None:
    """Pivot zero-level artificials out of the basis; rows where that is impossible are redundant"""
    for r, b in enumerate(tableau.basis):
        if b not in artificials:
            continue
        candidates = [c for c, a in tableau.rows[r].items() if c < num_original_columns and a != 0]
        if candidates:
            # the artificial is at zero, so the basic point does not move
            entering = min(candidates)
            tableau.at_upper.discard(entering)
            tableau.pivot(r, entering)
        else:
            logger.debug(f"Row {r} is redundant; its artificial stays basic at zero")


def reduced_costs(lp: LinearProgram, duals: Sequence[Fraction]) -> List[Fraction]:
    reduced = list(lp.objective)
    for y, row in zip(duals, lp.rows):
        if y == 0:
            continue
        for j, a in row.coefficients.items():
            reduced[j] -= y * a
    return reduced


def verify_optimality(lp: LinearProgram, solution: VertexSolution) -> None:
    """Exact primal feasibility, dual feasibility, complementary slackness and strong duality"""
    x, y = solution.primal, solution.duals
    is_min = lp.sense == Sense.MIN
    for j, value in enumerate(x):
        low, high = lp.lower[j], lp.upper[j]
        if (low is not None and value < low) or (high is not None and value > high):
            raise InvariantViolation(f"variable {j} = {value} violates its bounds [{low}, {high}]")
    for i, row in enumerate(lp.rows):
        if not row.is_satisfied(x):
            raise InvariantViolation(f"row {i} is violated by the returned primal")
        if y[i] != 0 and not row.is_tight(x):
            raise InvariantViolation(f"row {i} has dual {y[i]} but is not tight")
        wrong_sign = (row.relation == Relation.GE and (y[i] < 0 if is_min else y[i] > 0)) or (
            row.relation == Relation.LE and (y[i] > 0 if is_min else y[i] < 0)
        )
        if wrong_sign:
            raise InvariantViolation(f"row {i} ({row.relation.value}) has a dual of the wrong sign: {y[i]}")

    dual_objective = sum((yi * row.rhs for yi, row in zip(y, lp.rows)), ZERO)
    for j, d in enumerate(reduced_costs(lp, y)):
        if d == 0:
            continue
        improving_up = d < 0 if is_min else d > 0
        bound = lp.upper[j] if improving_up else lp.lower[j]
        if bound is None or x[j] != bound:
            raise InvariantViolation(f"variable {j} has reduced cost {d} but is not at the matching bound")
        dual_objective += d * bound
    if dual_objective != solution.objective:
        raise InvariantViolation(f"dual objective {dual_objective} differs from primal {solution.objective}")


def tight_constraint_rank(lp: LinearProgram, x: Sequence[Fraction]) -> int:
    """Rank of the rows tight at x together with the active variable bounds"""
    vectors: List[List[sympy.Rational]] = []
    for row in lp.rows:
        if row.is_tight(x):
            dense = [sympy.Rational(0)] * lp.num_vars
            for j, a in row.coefficients.items():
                dense[j] = sympy.Rational(a.numerator, a.denominator)
            vectors.append(dense)
    for j, value in enumerate(x):
        if value == lp.lower[j] or value == lp.upper[j]:
            unit = [sympy.Rational(0)] * lp.num_vars
            unit[j] = sympy.Rational(1)
            vectors.append(unit)
    if not vectors:
        return 0
    return int(sympy.Matrix(vectors).rank())


def is_vertex(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    return tight_constraint_rank(lp, x) == lp.num_vars
