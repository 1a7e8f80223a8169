from __future__ import annotations

import logging
from fractions import Fraction
from typing import AbstractSet, Any, FrozenSet, Iterable, List, Sequence, Tuple, Union

from kacss.core import Rational, format_fraction, to_fraction
from kacss.errors import InstanceFormatError
from pydantic import BaseModel, ConfigDict, PrivateAttr, ValidationError, model_validator

logger = logging.getLogger(__name__)

ArcSet = FrozenSet[int]
"""A set of arc indices into the arc list of an Instance."""

HEADER_TAG = "kacss"


class Arc(BaseModel):
    model_config = ConfigDict(frozen=True)

    tail: int
    head: int
    cost: Rational = Fraction(1)


class Instance(BaseModel):
    """Directed multigraph on vertices 0..n-1 with rational arc costs and a connectivity requirement k.

    Arc identity is the position in `arcs`; parallel arcs are distinct arcs.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    arcs: Tuple[Arc, ...]
    k: int

    _out_arcs: Tuple[Tuple[int, ...], ...] = PrivateAttr(default=())
    _in_arcs: Tuple[Tuple[int, ...], ...] = PrivateAttr(default=())

    @model_validator(mode="after")
    def check_instance(self) -> Instance:
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        if self.k < 1:
            raise ValueError(f"connectivity requirement must be at least 1, got {self.k}")
        for index, arc in enumerate(self.arcs):
            if not (0 <= arc.tail < self.n and 0 <= arc.head < self.n):
                raise ValueError(f"arc {index} ({arc.tail}, {arc.head}) has a vertex outside 0..{self.n - 1}")
            if arc.tail == arc.head:
                raise ValueError(f"arc {index} is a self-loop at vertex {arc.tail}")
            if arc.cost < 0:
                raise ValueError(f"arc {index} has negative cost {arc.cost}")
        return self

    @classmethod
    def from_pairs(
        cls, n: int, pairs: Iterable[Tuple[int, int]], k: int = 1, costs: Union[None, Sequence[Fraction]] = None
    ) -> Instance:
        pairs = list(pairs)
        cost_list = list(costs) if costs is not None else [Fraction(1)] * len(pairs)
        if len(cost_list) != len(pairs):
            raise ValueError("costs must match the number of arcs")
        arcs = tuple(Arc(tail=t, head=h, cost=c) for (t, h), c in zip(pairs, cost_list))
        return cls(n=n, arcs=arcs, k=k)

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def all_arcs(self) -> ArcSet:
        return frozenset(range(len(self.arcs)))

    def model_post_init(self, __context: Any) -> None:
        out_buckets: List[List[int]] = [[] for _ in range(self.n)]
        in_buckets: List[List[int]] = [[] for _ in range(self.n)]
        for index, arc in enumerate(self.arcs):
            out_buckets[arc.tail].append(index)
            in_buckets[arc.head].append(index)
        self._out_arcs = tuple(tuple(bucket) for bucket in out_buckets)
        self._in_arcs = tuple(tuple(bucket) for bucket in in_buckets)

    @property
    def costs(self) -> Tuple[Fraction, ...]:
        return tuple(arc.cost for arc in self.arcs)

    @property
    def is_unit_cost(self) -> bool:
        return all(arc.cost == 1 for arc in self.arcs)

    def out_arcs(self, v: int) -> Tuple[int, ...]:
        return self._out_arcs[v]

    def in_arcs(self, v: int) -> Tuple[int, ...]:
        return self._in_arcs[v]

    def reversed(self) -> Instance:
        """Same arcs with every direction flipped; arc indices are preserved."""
        arcs = tuple(Arc(tail=arc.head, head=arc.tail, cost=arc.cost) for arc in self.arcs)
        return Instance(n=self.n, arcs=arcs, k=self.k)

    def with_k(self, k: int) -> Instance:
        return Instance(n=self.n, arcs=self.arcs, k=k)

    def total_cost(self, arcs: Iterable[int]) -> Fraction:
        return sum((self.arcs[a].cost for a in arcs), Fraction(0))

    def delta_out(self, vertices: AbstractSet[int]) -> List[int]:
        """Indices of the arcs leaving the vertex set"""
        return [i for i, arc in enumerate(self.arcs) if arc.tail in vertices and arc.head not in vertices]

    def cut_value(self, vertices: AbstractSet[int], capacities: Sequence[Fraction]) -> Fraction:
        return sum((capacities[a] for a in self.delta_out(vertices)), Fraction(0))

    def validate_arc_set(self, arcs: Iterable[int]) -> ArcSet:
        result = frozenset(arcs)
        invalid = [a for a in result if not 0 <= a < len(self.arcs)]
        if invalid:
            raise ValueError(f"arc indices {sorted(invalid)} are out of range for {len(self.arcs)} arcs")
        return result


def _parse_int(token: str, what: str, line_number: int) -> int:
    try:
        return int(token)
    except ValueError as e:
        raise InstanceFormatError(f"{what} '{token}' is not an integer", line_number) from e


def _parse_cost(token: str, line_number: int) -> Fraction:
    if "/" not in token:
        raise InstanceFormatError(f"cost '{token}' must be written as num/den", line_number)
    try:
        cost = to_fraction(token)
    except ValueError as e:
        raise InstanceFormatError(str(e), line_number) from e
    if cost < 0:
        raise InstanceFormatError(f"negative cost {token}", line_number)
    return cost


def parse_instance(text: Union[str, bytes]) -> Instance:
    """Parse the line-oriented instance format (`p kacss n m k` header followed by m `a tail head num/den` lines)"""
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    header: Union[None, Tuple[int, int, int]] = None
    arcs: List[Arc] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise InstanceFormatError("duplicate header", line_number)
            if len(tokens) != 5 or tokens[1] != HEADER_TAG:
                raise InstanceFormatError(f"malformed header '{line}', expected 'p {HEADER_TAG} n m k'", line_number)
            n, m, k = (_parse_int(token, "header field", line_number) for token in tokens[2:])
            if n < 1 or m < 0:
                raise InstanceFormatError(f"invalid sizes n={n} m={m}", line_number)
            if k < 1:
                raise InstanceFormatError(f"connectivity requirement k={k} must be at least 1", line_number)
            header = (n, m, k)
        elif tokens[0] == "a":
            if header is None:
                raise InstanceFormatError("arc line before header", line_number)
            if len(tokens) != 4:
                raise InstanceFormatError(f"malformed arc line '{line}'", line_number)
            tail = _parse_int(tokens[1], "tail", line_number)
            head = _parse_int(tokens[2], "head", line_number)
            n = header[0]
            if not (0 <= tail < n and 0 <= head < n):
                raise InstanceFormatError(f"vertex id out of range 0..{n - 1} in '{line}'", line_number)
            if tail == head:
                raise InstanceFormatError(f"self-loop at vertex {tail}", line_number)
            arcs.append(Arc(tail=tail, head=head, cost=_parse_cost(tokens[3], line_number)))
        else:
            raise InstanceFormatError(f"unknown line type '{tokens[0]}'", line_number)

    if header is None:
        raise InstanceFormatError("missing header line")
    n, m, k = header
    if len(arcs) != m:
        raise InstanceFormatError(f"header announces {m} arcs but {len(arcs)} were given")
    try:
        return Instance(n=n, arcs=tuple(arcs), k=k)
    except ValidationError as e:
        raise InstanceFormatError(str(e)) from e


def write_instance(instance: Instance, comment: Union[None, str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    lines.append(f"p {HEADER_TAG} {instance.n} {instance.m} {instance.k}")
    lines.extend(f"a {arc.tail} {arc.head} {format_fraction(arc.cost)}" for arc in instance.arcs)
    return "\n".join(lines) + "\n"


def parse_arc_set(text: Union[str, bytes], instance: Union[None, Instance] = None) -> ArcSet:
    """Parse a subgraph file: one arc index per line, strictly ascending"""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    indices: List[int] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        index = _parse_int(line, "arc index", line_number)
        if indices and index <= indices[-1]:
            raise InstanceFormatError(f"arc indices must be strictly ascending, got {index}", line_number)
        if index < 0 or (instance is not None and index >= instance.m):
            raise InstanceFormatError(f"arc index {index} is out of range", line_number)
        indices.append(index)
    return frozenset(indices)


def write_arc_set(arcs: Iterable[int]) -> str:
    return "".join(f"{a}\n" for a in sorted(arcs))
