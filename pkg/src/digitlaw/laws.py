"""Closed-form expected distributions of leading significant digits.

Three laws are supported: the first digit d1 in 1..9, the second digit d2
in 0..9, and the joint first-two-digit value 10*d1+d2 in 10..99.  All
probabilities are computed from the log10 formulas in double precision;
nothing is read from lookup tables.
"""

from __future__ import annotations

import enum
import math
import operator
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError


class LawKind(enum.Enum):
    """Which leading-digit position a law describes."""

    FIRST_DIGIT = "bl1"
    SECOND_DIGIT = "bl2"
    FIRST_TWO_DIGITS = "bl12"

    @property
    def bins(self) -> range:
        if self is LawKind.FIRST_DIGIT:
            return range(1, 10)
        if self is LawKind.SECOND_DIGIT:
            return range(0, 10)
        return range(10, 100)

    @property
    def bin_count(self) -> int:
        return len(self.bins)


def _as_int(value, what: str) -> int:
    try:
        return operator.index(value)
    except TypeError:
        raise DomainError(f"{what} must be an integer, got {value!r}") from None


def expected_first_digit(i) -> float:
    """P(d1 = i) = log10(1 + 1/i) for i in 1..9."""
    i = _as_int(i, "first digit")
    if not 1 <= i <= 9:
        raise DomainError(f"first digit must be in 1..9, got {i}")
    return math.log10(1 + 1 / i)


def expected_second_digit(j) -> float:
    """P(d2 = j) = sum over k=1..9 of log10(1 + 1/(10k + j)) for j in 0..9."""
    j = _as_int(j, "second digit")
    if not 0 <= j <= 9:
        raise DomainError(f"second digit must be in 0..9, got {j}")
    return sum(math.log10(1 + 1 / (10 * k + j)) for k in range(1, 10))


def expected_first_two(b) -> float:
    """P(10*d1 + d2 = b) = log10(1 + 1/b) for b in 10..99."""
    b = _as_int(b, "first-two bin")
    if not 10 <= b <= 99:
        raise DomainError(f"first-two bin must be in 10..99, got {b}")
    return math.log10(1 + 1 / b)


@dataclass(frozen=True)
class ExpectedDistribution:
    """A law kind together with its full bin -> probability map."""

    kind: LawKind
    probs: dict

    def __post_init__(self):
        if set(self.probs) != set(self.kind.bins):
            raise DomainError(f"probability map does not cover the {self.kind.value} bins")


@lru_cache(maxsize=None)
def expected_distribution(kind: LawKind) -> ExpectedDistribution:
    """Full expected distribution for one law, cached."""
    if kind is LawKind.FIRST_DIGIT:
        probs = {i: expected_first_digit(i) for i in kind.bins}
    elif kind is LawKind.SECOND_DIGIT:
        probs = {j: expected_second_digit(j) for j in kind.bins}
    elif kind is LawKind.FIRST_TWO_DIGITS:
        probs = {b: expected_first_two(b) for b in kind.bins}
    else:
        raise DomainError(f"unknown law kind: {kind!r}")
    return ExpectedDistribution(kind, probs)
