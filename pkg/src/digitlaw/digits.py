"""Exact significant-digit extraction over decimal text.

Digits are read from a canonical decimal representation, never from
binary floating point: parsing "0.1" must yield the digit string "1",
not the 55-digit binary expansion a float would suggest.  Zero and
non-numeric inputs are distinct, non-extractable results so that callers
can account for every excluded value.
"""

from __future__ import annotations

import decimal
import enum
import math
import operator
from dataclasses import dataclass

from .errors import DomainError, ExtractionError
from .laws import LawKind


class Special(enum.Enum):
    """Parse results that carry no digits."""

    ZERO = "zero"
    NON_NUMERIC = "non_numeric"


ZERO = Special.ZERO
NON_NUMERIC = Special.NON_NUMERIC


@dataclass(frozen=True, slots=True)
class DecimalValue:
    """A nonzero decimal as sign, significant digits, and power of ten.

    The represented value is sign * d1.d2d3... * 10**exponent, so the
    digit string never starts with 0 and never ends with a redundant 0.
    """

    sign: int
    digits: str
    exponent: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign!r}")
        d = self.digits
        if not d or not (d.isascii() and d.isdigit()):
            raise DomainError(f"digits must be a nonempty digit string, got {d!r}")
        if d[0] == "0":
            raise DomainError("leading digit must be nonzero")
        if len(d) > 1 and d[-1] == "0":
            raise DomainError("trailing zeros must be stripped")
        if type(self.exponent) is not int:
            object.__setattr__(self, "exponent", operator.index(self.exponent))


def parse_decimal(text: str):
    """Parse decimal text into a DecimalValue, ZERO, or NON_NUMERIC.

    Accepts an optional sign, plain or scientific notation, and any
    leading/trailing whitespace.  Blank or unparseable text maps to
    NON_NUMERIC; every form of zero maps to ZERO.  Total over strings.
    """
    if not isinstance(text, str):
        raise TypeError(f"parse_decimal expects a string, got {type(text).__name__}")
    stripped = text.strip()
    if not stripped:
        return NON_NUMERIC
    try:
        value = decimal.Decimal(stripped)
    except decimal.InvalidOperation:
        return NON_NUMERIC
    if value.is_nan() or value.is_infinite():
        return NON_NUMERIC
    if value == 0:
        return ZERO
    sign_bit, digit_tuple, exp = value.as_tuple()
    digits = "".join(map(str, digit_tuple)).rstrip("0")
    scientific_exponent = exp + len(digit_tuple) - 1
    return DecimalValue(-1 if sign_bit else 1, digits, scientific_exponent)


def from_number(value):
    """Coerce a value of any supported type to a parse result.

    Strings are parsed; ints and Decimals convert exactly; floats are
    rendered at 15 significant digits first, which is far more precision
    than any digit law inspects; None means a missing cell.  Existing
    parse results pass through unchanged.
    """
    if isinstance(value, (DecimalValue, Special)):
        return value
    if value is None:
        return NON_NUMERIC
    if isinstance(value, str):
        return parse_decimal(value)
    if isinstance(value, bool):
        raise TypeError("booleans are not numeric data")
    if isinstance(value, int):
        return parse_decimal(str(value))
    if isinstance(value, float):
        if not math.isfinite(value):
            return NON_NUMERIC
        return parse_decimal(f"{value:.14e}")
    if isinstance(value, decimal.Decimal):
        return parse_decimal(str(value))
    try:
        return parse_decimal(str(operator.index(value)))
    except TypeError:
        raise TypeError(f"cannot interpret {type(value).__name__} as a decimal value") from None


def render(result) -> str:
    """Canonical text form; parse_decimal(render(x)) == x for any parse result."""
    if result is ZERO:
        return "0"
    if result is NON_NUMERIC:
        return ""
    head, tail = result.digits[0], result.digits[1:]
    mantissa = f"{head}.{tail}" if tail else head
    sign = "-" if result.sign < 0 else ""
    return f"{sign}{mantissa}e{result.exponent}"


def negate(value: DecimalValue) -> DecimalValue:
    if not isinstance(value, DecimalValue):
        raise ExtractionError("only nonzero decimal values can be negated")
    return DecimalValue(-value.sign, value.digits, value.exponent)


def _require_value(value) -> DecimalValue:
    if isinstance(value, DecimalValue):
        return value
    raise ExtractionError(f"no digits to extract from {value!r}")


def first_digit(value) -> int:
    """First significant digit, in 1..9.  Ignores sign and scale."""
    return int(_require_value(value).digits[0])


def second_digit(value) -> int:
    """Second significant digit, in 0..9.

    A single-digit significand has second digit 0: five hundred is
    5.0 * 10**2.
    """
    digits = _require_value(value).digits
    return int(digits[1]) if len(digits) > 1 else 0


def first_two(value) -> int:
    """The two-digit bin 10*d1 + d2, in 10..99."""
    digits = _require_value(value).digits
    if len(digits) > 1:
        return int(digits[:2])
    return 10 * int(digits)


def significand(value) -> float:
    """Signed significand d1.d2d3... as a float, magnitude in [1, 10)."""
    v = _require_value(value)
    head, tail = v.digits[0], v.digits[1:]
    mantissa = f"{head}.{tail}" if tail else head
    return v.sign * float(mantissa)


_EXTRACTORS = {
    LawKind.FIRST_DIGIT: first_digit,
    LawKind.SECOND_DIGIT: second_digit,
    LawKind.FIRST_TWO_DIGITS: first_two,
}


@dataclass(frozen=True)
class DigitTally:
    """Observed bin counts for one law, with exclusion bookkeeping."""

    kind: LawKind
    counts: dict
    n_included: int
    n_excluded_zero: int
    n_excluded_nonnumeric: int

    def __post_init__(self):
        domain = set(self.kind.bins)
        if not set(self.counts) <= domain:
            raise DomainError(f"tally keys outside the {self.kind.value} bin domain")
        if any(c < 0 for c in self.counts.values()):
            raise DomainError("tally counts must be nonnegative")
        if sum(self.counts.values()) != self.n_included:
            raise DomainError("tally counts must sum to n_included")

    def count(self, bin_value) -> int:
        return self.counts.get(bin_value, 0)

    def merge(self, other: "DigitTally") -> "DigitTally":
        """Combine two partial tallies of the same kind (associative, commutative)."""
        if other.kind is not self.kind:
            raise DomainError("cannot merge tallies of different kinds")
        counts = {b: self.count(b) + other.count(b) for b in self.kind.bins}
        return DigitTally(
            self.kind,
            counts,
            self.n_included + other.n_included,
            self.n_excluded_zero + other.n_excluded_zero,
            self.n_excluded_nonnumeric + other.n_excluded_nonnumeric,
        )


def tally(values, kind: LawKind) -> DigitTally:
    """Bin a sequence of values (or parse results) under one law.

    Zero and non-numeric entries are excluded from the counts but
    reported, so input length is always fully accounted for.
    """
    extract = _EXTRACTORS[kind]
    counts = dict.fromkeys(kind.bins, 0)
    n_included = n_zero = n_nonnumeric = 0
    for raw in values:
        value = from_number(raw)
        if value is ZERO:
            n_zero += 1
        elif value is NON_NUMERIC:
            n_nonnumeric += 1
        else:
            counts[extract(value)] += 1
            n_included += 1
    return DigitTally(kind, counts, n_included, n_zero, n_nonnumeric)
