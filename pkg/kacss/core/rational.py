from __future__ import annotations

import re
from fractions import Fraction
from typing import Annotated, Any

from pydantic import PlainSerializer, PlainValidator

_RATIONAL_PATTERN = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def to_fraction(value: Any) -> Fraction:
    """Convert ints, Fractions and "num/den" strings to an exact Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_PATTERN.match(value.strip())
        if match is None:
            raise ValueError(f"'{value}' is not a rational of the form num/den")
        numerator, denominator = match.groups()
        if denominator is not None and int(denominator) == 0:
            raise ValueError(f"'{value}' has a zero denominator")
        return Fraction(int(numerator), int(denominator or 1))
    raise ValueError(f"cannot interpret {value!r} as an exact rational")


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


Rational = Annotated[Fraction, PlainValidator(to_fraction), PlainSerializer(format_fraction, return_type=str)]
