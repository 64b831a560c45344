"""Exact rational parsing and formatting.

Counts are integers, so every derived rate is an exact ``Fraction`` and the
identities the package relies on hold exactly, not approximately. Floats are
converted through their exact binary expansion; strings use decimal semantics
("0.3" is exactly 3/10, "1/3" exactly one third). Floating point only appears
at reporting boundaries.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import DomainError

Rational = Union[int, float, str, Fraction]

DEFAULT_TOLERANCE = Fraction(1, 10**9)


def as_fraction(value: Rational, name: str = "value") -> Fraction:
    """Convert ``value`` to an exact Fraction, rejecting non-finite input."""
    if isinstance(value, bool):
        raise DomainError(f"{name} must be a number, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"{name} is not a number: {value!r}") from exc
    raise DomainError(f"{name} must be int, float, str or Fraction, got {type(value).__name__}")


def unit_fraction(value: Rational, name: str = "value") -> Fraction:
    """Parse a probability; raise DomainError outside [0, 1]."""
    x = as_fraction(value, name)
    if x < 0 or x > 1:
        raise DomainError(f"{name} must lie in [0, 1], got {x}")
    return x


def positive_fraction(value: Rational, name: str = "tolerance") -> Fraction:
    x = as_fraction(value, name)
    if x <= 0:
        raise DomainError(f"{name} must be positive, got {x}")
    return x


def fraction_str(x: Fraction) -> str:
    """Canonical text form: "7/75", or plain "0" / "1" for integers."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
