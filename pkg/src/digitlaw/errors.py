"""Exception types shared across the package."""


class DigitLawError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DigitLawError):
    """An argument lies outside the operation's documented domain."""


class ExtractionError(DigitLawError):
    """Digit extraction was attempted on a value that has no digits."""


class DegenerateInputError(DigitLawError):
    """A statistic was requested for an empty or all-excluded series."""


class ConfigError(DigitLawError):
    """An analysis request references variables or options that do not exist."""


class IngestionError(DigitLawError):
    """A tabular input is malformed.  Carries the offending location."""

    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
