"""End-to-end analysis pipeline and report serialization.

A report is a list of (slice, law) records, each carrying the tally,
observed and expected frequencies, and the full test result.  JSON
output is lossless and round-trips; csv and markdown round frequencies
to 5 decimals and statistics to 4.  Conformity classes always follow
the mean-MAD convention, and every rendering states that convention so
the sum-form figures cannot be misread against mean-form thresholds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .conformity import ConformityClass, TestResult, chi_square_critical, classify, run_test
from .digits import NON_NUMERIC, ZERO, DigitTally, from_number
from .errors import ConfigError, DegenerateInputError, DomainError
from .laws import LawKind, expected_distribution
from .panel import derive_ratio, split_by_sign

LAW_ORDER = (LawKind.FIRST_DIGIT, LawKind.SECOND_DIGIT, LawKind.FIRST_TWO_DIGITS)

MAD_CONVENTION_NOTE = (
    "mad_paper is the sum over bins of |observed - expected| frequency; "
    "mad_mean divides that sum by the bin count and is the form the "
    "conformity thresholds apply to"
)


@dataclass
class SliceRecord:
    """One value slice tested against one law."""

    label: str
    law: LawKind
    tally: DigitTally
    observed: dict
    expected: dict
    result: TestResult


@dataclass
class ConformityReport:
    """All records for one dataset, plus run metadata."""

    dataset: str
    alpha: float
    metadata: dict = field(default_factory=dict)
    slices: list = field(default_factory=list)


@dataclass(frozen=True)
class VariableSpec:
    name: str
    split: bool = False


@dataclass(frozen=True)
class RatioSpec:
    numerator: str
    denominator: str
    split: bool = False


@dataclass(frozen=True)
class PanelSpec:
    """Which variables, sign splits, and ratios to analyze."""

    variables: tuple = ()
    ratios: tuple = ()


def _sorted_laws(laws):
    requested = set(laws)
    if not requested:
        raise DomainError("at least one law is required")
    for law in requested:
        if not isinstance(law, LawKind):
            raise DomainError(f"not a law kind: {law!r}")
    return [law for law in LAW_ORDER if law in requested]


def _tally_from_bins12(kind, bins12, n_zero, n_nonnumeric):
    counts12 = np.bincount(bins12, minlength=100)[10:]
    if kind is LawKind.FIRST_DIGIT:
        vector = counts12.reshape(9, 10).sum(axis=1)
    elif kind is LawKind.SECOND_DIGIT:
        vector = counts12.reshape(9, 10).sum(axis=0)
    else:
        vector = counts12
    counts = dict(zip(kind.bins, vector.tolist()))
    return DigitTally(kind, counts, int(vector.sum()), n_zero, n_nonnumeric)


def analyze(values, laws, alpha=0.05, label="series"):
    """Test one slice of values against the requested laws.

    Returns one SliceRecord per law, in canonical law order.  The
    first-two-digit bin of each value is extracted once and the
    single-law tallies are derived by exact marginal sums.
    """
    n_zero = n_nonnumeric = 0
    bins12 = []
    for raw in values:
        value = from_number(raw)
        if value is ZERO:
            n_zero += 1
        elif value is NON_NUMERIC:
            n_nonnumeric += 1
        else:
            digits = value.digits
            bins12.append(int(digits[:2]) if len(digits) > 1 else 10 * int(digits))
    if not bins12:
        raise DegenerateInputError(f"slice {label!r} has no usable values after exclusions")
    bins12 = np.asarray(bins12)

    records = []
    for law in _sorted_laws(laws):
        tally = _tally_from_bins12(law, bins12, n_zero, n_nonnumeric)
        dist = expected_distribution(law)
        observed = {b: tally.count(b) / tally.n_included for b in law.bins}
        records.append(
            SliceRecord(
                label=label,
                law=law,
                tally=tally,
                observed=observed,
                expected=dict(dist.probs),
                result=run_test(tally, dist, alpha),
            )
        )
    return records


def _slice_values(series):
    return series.all_values()


def analyze_panel(panels, spec: PanelSpec, laws, alpha=0.05, dataset="panel") -> ConformityReport:
    """Analyze panel variables, their sign splits, and derived ratios.

    Slices appear in spec order; sign splits add "(-)" and "(+)" slices
    after the full slice.  Missing cells are excluded and counted as
    non-numeric; zeros are excluded and counted separately.
    """
    report = ConformityReport(
        dataset=dataset,
        alpha=float(alpha),
        metadata={
            "tool": f"digitlaw {__version__}",
            "mad_convention": MAD_CONVENTION_NOTE,
        },
    )

    def add_series_slices(label, values, split):
        report.slices.extend(analyze(values, laws, alpha, label))
        if split:
            present = [v for v in values if from_number(v) is not NON_NUMERIC]
            negatives, positives, _zeros = split_by_sign(present)
            report.slices.extend(analyze(negatives, laws, alpha, f"{label}(-)"))
            report.slices.extend(analyze(positives, laws, alpha, f"{label}(+)"))

    for variable in spec.variables:
        if variable.name not in panels:
            raise ConfigError(f"unknown variable {variable.name!r}; panel has {sorted(panels)}")
        add_series_slices(variable.name, _slice_values(panels[variable.name]), variable.split)

    for ratio in spec.ratios:
        for name in (ratio.numerator, ratio.denominator):
            if name not in panels:
                raise ConfigError(f"unknown ratio operand {name!r}; panel has {sorted(panels)}")
        series = derive_ratio(panels[ratio.numerator], panels[ratio.denominator])
        add_series_slices(series.variable, _slice_values(series), ratio.split)

    return report


# --- serialization ---------------------------------------------------------


def _slice_to_dict(record: SliceRecord) -> dict:
    tally = record.tally
    law = record.law
    return {
        "label": record.label,
        "law": law.value,
        "n": tally.n_included,
        "excluded": {
            "zero": tally.n_excluded_zero,
            "nonnumeric": tally.n_excluded_nonnumeric,
        },
        "counts": [tally.count(b) for b in law.bins],
        "observed": [record.observed[b] for b in law.bins],
        "expected": [record.expected[b] for b in law.bins],
        "chi2": record.result.chi2,
        "df": record.result.df,
        "chi2_critical": record.result.chi2_critical,
        "chi2_reject": record.result.chi2_reject,
        "mad_paper": record.result.mad_paper,
        "mad_mean": record.result.mad_mean,
        "conformity": record.result.conformity.value,
    }


def report_to_dict(report: ConformityReport) -> dict:
    return {
        "dataset": report.dataset,
        "alpha": report.alpha,
        "metadata": dict(report.metadata),
        "slices": [_slice_to_dict(record) for record in report.slices],
    }


def _slice_from_dict(entry: dict, alpha: float) -> SliceRecord:
    law = LawKind(entry["law"])
    bins = list(law.bins)
    counts = dict(zip(bins, entry["counts"]))
    tally = DigitTally(
        law,
        counts,
        entry["n"],
        entry["excluded"]["zero"],
        entry["excluded"]["nonnumeric"],
    )
    result = TestResult(
        kind=law,
        chi2=entry["chi2"],
        df=entry["df"],
        chi2_critical=entry["chi2_critical"],
        chi2_reject=entry["chi2_reject"],
        mad_paper=entry["mad_paper"],
        mad_mean=entry["mad_mean"],
        conformity=ConformityClass(entry["conformity"]),
        alpha=alpha,
    )
    return SliceRecord(
        label=entry["label"],
        law=law,
        tally=tally,
        observed=dict(zip(bins, entry["observed"])),
        expected=dict(zip(bins, entry["expected"])),
        result=result,
    )


def parse_report(text: str) -> ConformityReport:
    """Inverse of render(report, "json")."""
    data = json.loads(text)
    report = ConformityReport(
        dataset=data["dataset"],
        alpha=data["alpha"],
        metadata=dict(data["metadata"]),
    )
    report.slices = [_slice_from_dict(entry, report.alpha) for entry in data["slices"]]
    return report


def _render_csv(report: ConformityReport) -> str:
    header = (
        "slice,law,bin,count,observed,expected,"
        "chi2,df,chi2_critical,chi2_reject,mad_paper,mad_mean,conformity"
    )
    lines = [header]
    for record in report.slices:
        for b in record.law.bins:
            lines.append(
                f"{record.label},{record.law.value},{b},{record.tally.count(b)},"
                f"{record.observed[b]:.5f},{record.expected[b]:.5f},,,,,,,"
            )
        r = record.result
        lines.append(
            f"{record.label},{record.law.value},stats,,,,"
            f"{r.chi2:.4f},{r.df},{r.chi2_critical:.4f},{r.chi2_reject},"
            f"{r.mad_paper:.4f},{r.mad_mean:.4f},{r.conformity.value}"
        )
    return "\n".join(lines) + "\n"


def _render_markdown(report: ConformityReport) -> str:
    out = [f"# Digit-law conformity report: {report.dataset}", ""]
    out.append(f"alpha = {report.alpha}; {report.metadata.get('mad_convention', MAD_CONVENTION_NOTE)}.")
    out.append("")
    for record in report.slices:
        r = record.result
        out.append(f"## {record.label} [{record.law.value}]")
        out.append("")
        out.append("| bin | count | observed | expected |")
        out.append("| --- | --- | --- | --- |")
        for b in record.law.bins:
            out.append(
                f"| {b} | {record.tally.count(b)} | {record.observed[b]:.5f} | {record.expected[b]:.5f} |"
            )
        out.append("")
        out.append("| statistic | value |")
        out.append("| --- | --- |")
        out.append(f"| n | {record.tally.n_included} |")
        out.append(f"| excluded zero | {record.tally.n_excluded_zero} |")
        out.append(f"| excluded non-numeric | {record.tally.n_excluded_nonnumeric} |")
        reject = "reject" if r.chi2_reject else "no reject"
        out.append(
            f"| chi2 | {r.chi2:.4f} (df {r.df}, critical {r.chi2_critical:.4f} "
            f"at alpha {r.alpha}, {reject}) |"
        )
        out.append(f"| mad (sum form) | {r.mad_paper:.4f} |")
        out.append(f"| mad (mean form) | {r.mad_mean:.4f} |")
        out.append(f"| conformity (mean-form thresholds) | {r.conformity.value} |")
        out.append("")
    return "\n".join(out)


def render(report: ConformityReport, format: str = "markdown") -> str:
    """Serialize a report as json (lossless), csv, or markdown."""
    if format == "json":
        return json.dumps(report_to_dict(report), indent=2)
    if format == "csv":
        return _render_csv(report)
    if format in ("markdown", "md"):
        return _render_markdown(report)
    raise DomainError(f"unknown report format {format!r}")


def _slug(label: str) -> str:
    cleaned = (
        label.replace("(-)", "-neg")
        .replace("(+)", "-pos")
        .replace("/", "-over-")
    )
    return "".join(c if c.isalnum() or c in "-_" else "_" for c in cleaned)


def plot_data(report: ConformityReport) -> dict:
    """Per-record (bin, observed, expected) triples as tab-delimited text.

    Returns {record name: text}; callers write each entry to its own
    file for external plotting tools.
    """
    streams = {}
    for record in report.slices:
        lines = ["bin\tobserved\texpected"]
        for b in record.law.bins:
            lines.append(f"{b}\t{record.observed[b]!r}\t{record.expected[b]!r}")
        streams[f"{_slug(record.label)}_{record.law.value}"] = "\n".join(lines) + "\n"
    return streams
