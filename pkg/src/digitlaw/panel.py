"""Panel-data ingestion and shaping for digit-law analysis.

A panel holds one optional decimal string per (company, fiscal-year)
cell.  Ingestion is strict and all-or-nothing: the first malformed row
aborts the whole file with its location, while blank cells are a normal,
counted case.  Values stay as text until digits are extracted, so no
precision is lost in transit.
"""

from __future__ import annotations

import csv
import decimal
import math
import os
from dataclasses import dataclass, field

from .digits import NON_NUMERIC, ZERO, from_number, parse_decimal, significand
from .errors import DegenerateInputError, DomainError, IngestionError

_LONG_COLUMNS = ("company", "year", "variable", "value")


@dataclass(frozen=True)
class IngestionConfig:
    """How to read one tabular file."""

    layout: str = "auto"  # auto | long | wide
    delimiter: str = ","
    strip_thousands: bool = False
    year_range: tuple | None = None

    def __post_init__(self):
        if self.layout not in ("auto", "long", "wide"):
            raise DomainError(f"layout must be auto, long, or wide, got {self.layout!r}")
        if self.year_range is not None:
            lo, hi = self.year_range
            if lo > hi:
                raise DomainError(f"empty year range {self.year_range!r}")


@dataclass
class PanelSeries:
    """One variable's (company, year) -> optional value-string map."""

    variable: str
    entries: dict = field(default_factory=dict)

    @property
    def present_count(self) -> int:
        return sum(1 for v in self.entries.values() if v is not None)

    @property
    def missing_count(self) -> int:
        return sum(1 for v in self.entries.values() if v is None)

    def sorted_keys(self):
        return sorted(self.entries)

    def present_values(self):
        """Value strings in deterministic (company, year) order."""
        return [self.entries[k] for k in self.sorted_keys() if self.entries[k] is not None]

    def all_values(self):
        """All cell values in deterministic order, missing cells as None."""
        return [self.entries[k] for k in self.sorted_keys()]


def _clean_cell(text, config):
    cell = text.strip()
    if config.strip_thousands:
        cell = cell.replace(",", "").replace("_", "")
    return cell


def _parse_year(text, row_number):
    try:
        return int(text.strip())
    except ValueError:
        raise IngestionError(f"fiscal year is not an integer: {text!r}", row=row_number, column="year") from None


def _check_year(year, config, row_number):
    if config.year_range is not None:
        lo, hi = config.year_range
        if not lo <= year <= hi:
            raise IngestionError(f"fiscal year {year} outside configured range {lo}..{hi}", row=row_number, column="year")


def _check_value(cell, row_number, column):
    if cell and parse_decimal(cell) is NON_NUMERIC:
        raise IngestionError(f"cell is not blank and not numeric: {cell!r}", row=row_number, column=column)


def load_panel(source, config: IngestionConfig | None = None) -> dict:
    """Read a delimited panel file into {variable name: PanelSeries}.

    The header decides the layout: exactly the columns company, year,
    variable, value mean long form; company and year followed by one
    column per variable mean wide form.  Blank value cells are stored as
    missing; any other unparseable cell aborts ingestion with its
    location.
    """
    config = config or IngestionConfig()
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8", newline="") as handle:
            return load_panel(handle, config)

    reader = csv.reader(source, delimiter=config.delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise IngestionError("file is empty: no header row") from None
    names = [h.strip() for h in header]
    lowered = [h.lower() for h in names]

    if config.layout == "long" or (config.layout == "auto" and sorted(lowered) == sorted(_LONG_COLUMNS)):
        if sorted(lowered) != sorted(_LONG_COLUMNS):
            raise IngestionError(f"long layout requires columns {_LONG_COLUMNS}, got {tuple(names)}", row=1)
        index = {name: lowered.index(name) for name in _LONG_COLUMNS}
        return _load_long(reader, index, config)
    if config.layout == "auto" and not (len(lowered) > 2 and lowered[0] == "company" and lowered[1] == "year"):
        raise IngestionError(f"cannot recognize header {tuple(names)}: expected long or wide panel columns", row=1)
    if lowered[:2] != ["company", "year"] or len(names) < 3:
        raise IngestionError(f"wide layout requires company, year, then variable columns, got {tuple(names)}", row=1)
    return _load_wide(reader, names[2:], config)


def _load_long(reader, index, config):
    series: dict = {}
    for row_number, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(_LONG_COLUMNS):
            raise IngestionError(f"expected {len(_LONG_COLUMNS)} fields, got {len(row)}", row=row_number)
        company = row[index["company"]].strip()
        if not company:
            raise IngestionError("company id is blank", row=row_number, column="company")
        year = _parse_year(row[index["year"]], row_number)
        _check_year(year, config, row_number)
        variable = row[index["variable"]].strip()
        if not variable:
            raise IngestionError("variable name is blank", row=row_number, column="variable")
        cell = _clean_cell(row[index["value"]], config)
        _check_value(cell, row_number, "value")
        bucket = series.setdefault(variable, PanelSeries(variable))
        key = (company, year)
        if key in bucket.entries:
            raise IngestionError(f"duplicate entry for {variable} at {key}", row=row_number)
        bucket.entries[key] = cell if cell else None
    return series


def _load_wide(reader, variables, config):
    seen_names = set()
    for name in variables:
        if not name.strip() or name.strip() in seen_names:
            raise IngestionError(f"wide header has blank or duplicate variable names: {tuple(variables)}", row=1)
        seen_names.add(name.strip())
    series = {name.strip(): PanelSeries(name.strip()) for name in variables}
    for row_number, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2 + len(variables):
            raise IngestionError(f"expected {2 + len(variables)} fields, got {len(row)}", row=row_number)
        company = row[0].strip()
        if not company:
            raise IngestionError("company id is blank", row=row_number, column="company")
        year = _parse_year(row[1], row_number)
        _check_year(year, config, row_number)
        key = (company, year)
        for name, raw in zip(variables, row[2:]):
            name = name.strip()
            bucket = series[name]
            if key in bucket.entries:
                raise IngestionError(f"duplicate entry for {name} at {key}", row=row_number)
            cell = _clean_cell(raw, config)
            _check_value(cell, row_number, name)
            bucket.entries[key] = cell if cell else None
    return series


def split_by_sign(values):
    """Partition values into (negatives, positives, zero_count).

    The returned lists hold DecimalValue objects in input order; zeros
    are counted but belong to neither part.  Non-numeric input is a
    domain error because a sign split of missing data is meaningless.
    """
    negatives, positives = [], []
    zero_count = 0
    for raw in values:
        value = from_number(raw)
        if value is ZERO:
            zero_count += 1
        elif value is NON_NUMERIC:
            raise DomainError("cannot sign-split a non-numeric value")
        elif value.sign < 0:
            negatives.append(value)
        else:
            positives.append(value)
    return negatives, positives, zero_count


def derive_ratio(numerator: PanelSeries, denominator: PanelSeries, precision: int = 15) -> PanelSeries:
    """Per-key quotient series, present iff both operands are present
    and the denominator is nonzero.

    The quotient is computed in decimal arithmetic and rendered at
    `precision` significant digits, so its leading digits are exact.
    """
    ratio = PanelSeries(f"{numerator.variable}/{denominator.variable}")
    keys = sorted(set(numerator.entries) | set(denominator.entries))
    with decimal.localcontext() as context:
        context.prec = precision
        for key in keys:
            num = numerator.entries.get(key)
            den = denominator.entries.get(key)
            if num is None or den is None:
                ratio.entries[key] = None
                continue
            den_value = decimal.Decimal(den)
            if den_value == 0:
                ratio.entries[key] = None
                continue
            ratio.entries[key] = str(decimal.Decimal(num) / den_value)
    return ratio


@dataclass(frozen=True)
class SummaryStats:
    """Sample summary moments of one series."""

    n: int
    min: float
    max: float
    mean: float
    stdev: float
    skewness: float
    excess_kurtosis: float
    cv: float


def summary_stats(values, mode: str = "raw") -> SummaryStats:
    """Summary moments of a series, over raw values or signed significands.

    Uses sample central moments: stdev has the n-1 denominator, skewness
    is m3/m2**1.5, and kurtosis is excess (m4/m2**2 - 3).  Zero and
    non-numeric entries are excluded.  cv is stdev/mean, NaN when the
    mean is zero.
    """
    if mode not in ("raw", "significand"):
        raise DomainError(f"mode must be raw or significand, got {mode!r}")
    points = []
    for raw in values:
        value = from_number(raw)
        if value is ZERO or value is NON_NUMERIC:
            continue
        if mode == "significand":
            points.append(significand(value))
        else:
            head, tail = value.digits[0], value.digits[1:]
            mantissa = f"{head}.{tail}" if tail else head
            points.append(value.sign * float(mantissa) * 10.0 ** value.exponent)
    n = len(points)
    if n < 2:
        raise DegenerateInputError(f"summary statistics require at least 2 values, got {n}")
    mean = math.fsum(points) / n
    m2 = math.fsum((x - mean) ** 2 for x in points) / n
    m3 = math.fsum((x - mean) ** 3 for x in points) / n
    m4 = math.fsum((x - mean) ** 4 for x in points) / n
    stdev = math.sqrt(math.fsum((x - mean) ** 2 for x in points) / (n - 1))
    skew = m3 / m2 ** 1.5 if m2 > 0 else 0.0
    kurt = m4 / m2 ** 2 - 3.0 if m2 > 0 else 0.0
    cv = stdev / mean if mean != 0 else math.nan
    return SummaryStats(
        n=n,
        min=min(points),
        max=max(points),
        mean=mean,
        stdev=stdev,
        skewness=skew,
        excess_kurtosis=kurt,
        cv=cv,
    )
