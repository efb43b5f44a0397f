"""Exact digit extraction from decimal text and numbers."""

import decimal

import pytest

from digitlaw import (
    NON_NUMERIC,
    ZERO,
    DecimalValue,
    DomainError,
    ExtractionError,
    LawKind,
    first_digit,
    first_two,
    from_number,
    parse_decimal,
    render,
    second_digit,
    significand,
    tally,
)
from digitlaw.digits import negate


# --- parsing ---------------------------------------------------------------

@pytest.mark.parametrize(
    "text, sign, digits, exponent",
    [
        ("123", 1, "123", 2),
        ("-123", -1, "123", 2),
        ("+123", 1, "123", 2),
        ("0.00456", 1, "456", -3),
        ("-0.004560", -1, "456", -3),
        ("1.0", 1, "1", 0),
        ("9.999e5", 1, "9999", 5),
        ("1E-7", 1, "1", -7),
        ("12030", 1, "1203", 4),
        ("  42 ", 1, "42", 1),
        ("500", 1, "5", 2),
    ],
)
def test_parse_decimal(text, sign, digits, exponent):
    value = parse_decimal(text)
    assert value == DecimalValue(sign, digits, exponent)


@pytest.mark.parametrize("text", ["0", "0.0", "-0", "0e5", "+0.000"])
def test_parse_zero(text):
    assert parse_decimal(text) is ZERO


@pytest.mark.parametrize("text", ["", "   ", "abc", "1.2.3", "nan", "NaN", "inf", "-Infinity", "1,5"])
def test_parse_non_numeric(text):
    assert parse_decimal(text) is NON_NUMERIC


def test_parse_rejects_non_strings():
    with pytest.raises(TypeError):
        parse_decimal(123)


# --- coercion --------------------------------------------------------------

def test_from_number_int_is_exact():
    # bigger than any float mantissa; digits must not be truncated
    value = from_number(12345678901234567890123)
    assert value.digits == "12345678901234567890123"
    assert value.exponent == 22


def test_from_number_float_uses_15_digits():
    assert from_number(0.1) == DecimalValue(1, "1", -1)
    assert from_number(123.456) == DecimalValue(1, "123456", 2)
    # floats carry at most 17 significant decimal digits; the 15-digit
    # rendering is a stable canonical form for digit work
    assert len(from_number(1 / 3).digits) <= 15


def test_from_number_specials():
    assert from_number(None) is NON_NUMERIC
    assert from_number(float("nan")) is NON_NUMERIC
    assert from_number(float("inf")) is NON_NUMERIC
    assert from_number(0) is ZERO
    assert from_number(0.0) is ZERO
    assert from_number(decimal.Decimal("0.00")) is ZERO


def test_from_number_passthrough():
    value = parse_decimal("3.14")
    assert from_number(value) is value
    assert from_number(ZERO) is ZERO
    assert from_number(NON_NUMERIC) is NON_NUMERIC


def test_from_number_rejects_bool_and_junk():
    with pytest.raises(TypeError):
        from_number(True)
    with pytest.raises(TypeError):
        from_number(object())


# --- canonical form and rendering ------------------------------------------

def test_decimal_value_validation():
    with pytest.raises(DomainError):
        DecimalValue(0, "1", 0)
    with pytest.raises(DomainError):
        DecimalValue(1, "", 0)
    with pytest.raises(DomainError):
        DecimalValue(1, "012", 0)
    with pytest.raises(DomainError):
        DecimalValue(1, "120", 0)  # trailing zero not stripped
    with pytest.raises(DomainError):
        DecimalValue(1, "1a", 0)


def test_render_round_trip():
    for text in ["123", "-0.00456", "9.999e99", "1", "-1e-30", "777000"]:
        value = parse_decimal(text)
        assert parse_decimal(render(value)) == value
    assert render(ZERO) == "0"
    assert render(NON_NUMERIC) == ""
    assert parse_decimal(render(ZERO)) is ZERO
    assert parse_decimal(render(NON_NUMERIC)) is NON_NUMERIC


def test_render_matches_value():
    # the rendered text denotes the same number the input text did
    for text in ["123", "-0.00456", "31.4159", "500"]:
        assert decimal.Decimal(render(parse_decimal(text))) == decimal.Decimal(text)


def test_negate():
    value = parse_decimal("42")
    assert negate(value) == DecimalValue(-1, "42", 1)
    assert negate(negate(value)) == value
    with pytest.raises(ExtractionError):
        negate(ZERO)


# --- extraction -------------------------------------------------------------

@pytest.mark.parametrize(
    "text, d1, d2, b",
    [
        ("123", 1, 2, 12),
        ("-987", 9, 8, 98),
        ("0.00456", 4, 5, 45),
        ("7", 7, 0, 70),  # single digit: 7 = 7.0 * 10^0
        ("500", 5, 0, 50),
        ("1.09", 1, 0, 10),
        ("9.99e-9", 9, 9, 99),
    ],
)
def test_extractors(text, d1, d2, b):
    value = parse_decimal(text)
    assert first_digit(value) == d1
    assert second_digit(value) == d2
    assert first_two(value) == b
    assert b == 10 * d1 + d2


def test_extractors_reject_specials():
    for extractor in (first_digit, second_digit, first_two, significand):
        with pytest.raises(ExtractionError):
            extractor(ZERO)
        with pytest.raises(ExtractionError):
            extractor(NON_NUMERIC)


def test_significand():
    assert significand(parse_decimal("123")) == pytest.approx(1.23)
    assert significand(parse_decimal("-0.00456")) == pytest.approx(-4.56)
    assert significand(parse_decimal("7e30")) == pytest.approx(7.0)
    assert 1.0 <= abs(significand(parse_decimal("999999"))) < 10.0


def test_sign_and_scale_invariance():
    # first digits do not care about sign or magnitude
    base = parse_decimal("123456")
    for text in ["-123456", "1.23456", "12.3456e7", "-0.000123456"]:
        other = parse_decimal(text)
        assert first_digit(other) == first_digit(base)
        assert second_digit(other) == second_digit(base)
        assert first_two(other) == first_two(base)


# --- tallies ----------------------------------------------------------------

def test_tally_counts_and_exclusions():
    values = ["123", "19", "0", "", "abc", "-256", 47, 1.11, None]
    t = tally(values, LawKind.FIRST_DIGIT)
    assert t.n_included == 5
    assert t.n_excluded_zero == 1
    assert t.n_excluded_nonnumeric == 3
    assert t.count(1) == 3  # 123, 19, 1.11
    assert t.count(2) == 1
    assert t.count(4) == 1
    assert sum(t.counts.values()) == t.n_included


def test_tally_second_and_first_two():
    values = ["10", "19", "95", "9", "905"]
    t2 = tally(values, LawKind.SECOND_DIGIT)
    assert t2.count(0) == 3  # 10, 9 (=9.0), 905 -> second digit 0
    assert t2.count(9) == 1
    assert t2.count(5) == 1
    t12 = tally(values, LawKind.FIRST_TWO_DIGITS)
    assert t12.count(10) == 1
    assert t12.count(19) == 1
    assert t12.count(95) == 1
    assert t12.count(90) == 2  # 9 -> 90, 905 -> 90


def test_tally_validation():
    from digitlaw import DigitTally

    with pytest.raises(DomainError):
        DigitTally(LawKind.FIRST_DIGIT, {0: 1}, 1, 0, 0)  # bin outside domain
    with pytest.raises(DomainError):
        DigitTally(LawKind.FIRST_DIGIT, {1: 2}, 1, 0, 0)  # sum mismatch
    with pytest.raises(DomainError):
        DigitTally(LawKind.FIRST_DIGIT, {1: -1}, -1, 0, 0)


def test_tally_merge():
    a = tally(["123", "456", "0"], LawKind.FIRST_DIGIT)
    b = tally(["789", "", "111"], LawKind.FIRST_DIGIT)
    merged = a.merge(b)
    whole = tally(["123", "456", "0", "789", "", "111"], LawKind.FIRST_DIGIT)
    assert merged.counts == whole.counts
    assert merged.n_included == whole.n_included
    assert merged.n_excluded_zero == whole.n_excluded_zero
    assert merged.n_excluded_nonnumeric == whole.n_excluded_nonnumeric
    with pytest.raises(DomainError):
        a.merge(tally(["1"], LawKind.SECOND_DIGIT))
