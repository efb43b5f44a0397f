"""Digit-law conformity analytics for numeric panel data.

The package tests series of numbers against the logarithmic
first-digit, second-digit, and first-two-digit distributions using a
chi-square goodness-of-fit test and the mean absolute deviation of the
observed digit frequencies, reports both the summed and the averaged
MAD convention, and ships a seeded synthetic generator for power
checks.
"""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DegenerateInputError,
    DigitLawError,
    DomainError,
    ExtractionError,
    IngestionError,
)
from .laws import (
    ExpectedDistribution,
    LawKind,
    expected_distribution,
    expected_first_digit,
    expected_first_two,
    expected_second_digit,
)
from .digits import (
    NON_NUMERIC,
    ZERO,
    DecimalValue,
    DigitTally,
    Special,
    first_digit,
    first_two,
    from_number,
    parse_decimal,
    render,
    second_digit,
    significand,
    tally,
)
from .conformity import (
    ConformityClass,
    TestResult,
    chi_square,
    chi_square_critical,
    classify,
    mad_mean,
    mad_paper,
    run_test,
)
from .panel import (
    IngestionConfig,
    PanelSeries,
    SummaryStats,
    derive_ratio,
    load_panel,
    split_by_sign,
    summary_stats,
)
from .synth import (
    GENERATOR_NAME,
    SynthConfig,
    generate,
    inject_rounding,
    render_sample_csv,
    sample_benford,
)
from .report import (
    ConformityReport,
    PanelSpec,
    RatioSpec,
    SliceRecord,
    VariableSpec,
    analyze,
    analyze_panel,
    parse_report,
    plot_data,
)
from .report import render as render_report
from .figures import save_figures

__all__ = [
    "__version__",
    "DigitLawError",
    "DomainError",
    "ExtractionError",
    "DegenerateInputError",
    "ConfigError",
    "IngestionError",
    "LawKind",
    "ExpectedDistribution",
    "expected_first_digit",
    "expected_second_digit",
    "expected_first_two",
    "expected_distribution",
    "Special",
    "ZERO",
    "NON_NUMERIC",
    "DecimalValue",
    "parse_decimal",
    "from_number",
    "render",
    "first_digit",
    "second_digit",
    "first_two",
    "significand",
    "DigitTally",
    "tally",
    "ConformityClass",
    "TestResult",
    "chi_square",
    "chi_square_critical",
    "mad_paper",
    "mad_mean",
    "classify",
    "run_test",
    "IngestionConfig",
    "PanelSeries",
    "SummaryStats",
    "load_panel",
    "split_by_sign",
    "derive_ratio",
    "summary_stats",
    "GENERATOR_NAME",
    "SynthConfig",
    "sample_benford",
    "inject_rounding",
    "generate",
    "render_sample_csv",
    "SliceRecord",
    "ConformityReport",
    "PanelSpec",
    "VariableSpec",
    "RatioSpec",
    "analyze",
    "analyze_panel",
    "render_report",
    "parse_report",
    "plot_data",
    "save_figures",
]
