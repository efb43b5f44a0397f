"""Report assembly, serialization, plot data, and figures."""

import io
import json

import pytest

from digitlaw import (
    ConfigError,
    ConformityReport,
    DegenerateInputError,
    DomainError,
    IngestionConfig,
    LawKind,
    PanelSpec,
    RatioSpec,
    VariableSpec,
    analyze,
    analyze_panel,
    chi_square,
    expected_distribution,
    load_panel,
    parse_report,
    plot_data,
    render_report,
    save_figures,
    tally,
)

PANEL = """company,year,PI,TA
A,2009,125.5,1000
A,2010,-30,500
B,2009,0,250
B,2010,,125
C,2009,47,940
"""


def load_demo_panel():
    return load_panel(io.StringIO(PANEL), IngestionConfig())


def demo_report(laws=(LawKind.FIRST_DIGIT, LawKind.SECOND_DIGIT)):
    spec = PanelSpec(
        variables=(VariableSpec("PI", split=True), VariableSpec("TA")),
        ratios=(RatioSpec("PI", "TA"),),
    )
    return analyze_panel(load_demo_panel(), spec, list(laws), alpha=0.05, dataset="demo")


def test_analyze_single_pass_matches_tally():
    values = ["123", "19", "0", "", "-256", "47", "1.11", "905"]
    records = analyze(values, list(LawKind), label="s")
    assert [r.law for r in records] == list(LawKind)
    for record in records:
        direct = tally(values, record.law)
        assert record.tally.counts == direct.counts
        assert record.tally.n_included == direct.n_included
        assert record.tally.n_excluded_zero == direct.n_excluded_zero
        assert record.tally.n_excluded_nonnumeric == direct.n_excluded_nonnumeric
        statistic, df = chi_square(direct, expected_distribution(record.law))
        assert record.result.chi2 == pytest.approx(statistic, abs=1e-12)
        assert record.result.df == df


def test_analyze_law_order_is_canonical():
    values = ["11", "22", "33"]
    records = analyze(values, [LawKind.FIRST_TWO_DIGITS, LawKind.FIRST_DIGIT], label="s")
    assert [r.law for r in records] == [LawKind.FIRST_DIGIT, LawKind.FIRST_TWO_DIGITS]


def test_analyze_rejects_empty_and_no_laws():
    with pytest.raises(DegenerateInputError):
        analyze(["0", ""], [LawKind.FIRST_DIGIT], label="s")
    with pytest.raises(DomainError):
        analyze(["1"], [], label="s")
    with pytest.raises(DomainError):
        analyze(["1"], ["bl1"], label="s")  # strings are not LawKind


def test_analyze_panel_slices_and_order():
    report = demo_report()
    labels = [(r.label, r.law.value) for r in report.slices]
    assert labels == [
        ("PI", "bl1"), ("PI", "bl2"),
        ("PI(-)", "bl1"), ("PI(-)", "bl2"),
        ("PI(+)", "bl1"), ("PI(+)", "bl2"),
        ("TA", "bl1"), ("TA", "bl2"),
        ("PI/TA", "bl1"), ("PI/TA", "bl2"),
    ]
    assert report.dataset == "demo"
    assert "mad_convention" in report.metadata
    pi = report.slices[0].tally
    assert pi.n_included == 3  # 125.5, -30, 47
    assert pi.n_excluded_zero == 1
    assert pi.n_excluded_nonnumeric == 1  # the missing cell
    ratio = report.slices[-1].tally
    assert ratio.n_included == 3  # 0 / 250 excluded as zero, missing excluded


def test_analyze_panel_unknown_names():
    panels = load_demo_panel()
    with pytest.raises(ConfigError):
        analyze_panel(panels, PanelSpec(variables=(VariableSpec("XX"),)), [LawKind.FIRST_DIGIT])
    with pytest.raises(ConfigError):
        analyze_panel(panels, PanelSpec(ratios=(RatioSpec("PI", "XX"),)), [LawKind.FIRST_DIGIT])


def test_json_round_trip_lossless():
    report = demo_report()
    text = render_report(report, "json")
    back = parse_report(text)
    assert render_report(back, "json") == text
    assert back.dataset == report.dataset
    assert back.alpha == report.alpha
    assert len(back.slices) == len(report.slices)
    for a, b in zip(back.slices, report.slices):
        assert a.label == b.label
        assert a.law is b.law
        assert a.tally.counts == b.tally.counts
        assert a.result.chi2 == b.result.chi2  # float-exact through json
        assert a.result.conformity is b.result.conformity


def test_json_schema_fields():
    data = json.loads(render_report(demo_report(), "json"))
    assert set(data) == {"dataset", "alpha", "metadata", "slices"}
    entry = data["slices"][0]
    assert set(entry) == {
        "label", "law", "n", "excluded", "counts", "observed", "expected",
        "chi2", "df", "chi2_critical", "chi2_reject", "mad_paper",
        "mad_mean", "conformity",
    }
    assert set(entry["excluded"]) == {"zero", "nonnumeric"}
    assert len(entry["counts"]) == 9
    assert entry["law"] == "bl1"


def test_csv_render_shape():
    text = render_report(demo_report(), "csv")
    lines = text.strip().split("\n")
    assert lines[0].startswith("slice,law,bin,count,observed,expected")
    # 10 records: 9 or 10 bin rows plus one stats row each
    bl1_rows = [l for l in lines if l.startswith("PI,bl1,")]
    assert len(bl1_rows) == 10  # 9 bins + stats
    stats_rows = [l for l in lines if ",stats," in l]
    assert len(stats_rows) == 10
    for row in stats_rows:
        assert row.split(",")[-1] in {"close", "acceptable", "marginal", "nonconforming"}


def test_markdown_render_mentions_both_mad_forms():
    text = render_report(demo_report(), "markdown")
    assert text.splitlines()[0].startswith("# ")
    assert "mad (sum form)" in text
    assert "mad (mean form)" in text
    assert "## PI [bl1]" in text
    assert "—" not in text  # no em-dashes in any rendering
    assert render_report(demo_report(), "md") == text


def test_render_deterministic():
    assert render_report(demo_report(), "json") == render_report(demo_report(), "json")
    assert render_report(demo_report(), "csv") == render_report(demo_report(), "csv")


def test_render_unknown_format():
    with pytest.raises(DomainError):
        render_report(demo_report(), "yaml")


def test_plot_data_streams():
    report = demo_report()
    streams = plot_data(report)
    assert set(streams) == {
        "PI_bl1", "PI_bl2", "PI-neg_bl1", "PI-neg_bl2", "PI-pos_bl1",
        "PI-pos_bl2", "TA_bl1", "TA_bl2", "PI-over-TA_bl1", "PI-over-TA_bl2",
    }
    lines = streams["PI_bl1"].strip().split("\n")
    assert lines[0] == "bin\tobserved\texpected"
    assert len(lines) == 10
    record = report.slices[0]
    bin_value, observed, expected = lines[1].split("\t")
    assert int(bin_value) == 1
    # full precision: the repr round-trips to the exact float
    assert float(observed) == record.observed[1]
    assert float(expected) == record.expected[1]


def test_save_figures(tmp_path):
    report = demo_report(laws=(LawKind.FIRST_DIGIT, LawKind.FIRST_TWO_DIGITS))
    paths = save_figures(report, tmp_path / "figs")
    assert len(paths) == len(report.slices)
    for path, record in zip(paths, report.slices):
        assert path.endswith(f"{record.law.value}.png")
        with open(path, "rb") as fh:
            assert fh.read(8) == b"\x89PNG\r\n\x1a\n"


def test_report_metadata_round_trip():
    report = ConformityReport(dataset="x", alpha=0.1, metadata={"note": "hello"})
    report.slices = analyze(["12", "34", "56"], [LawKind.FIRST_DIGIT], alpha=0.1)
    back = parse_report(render_report(report, "json"))
    assert back.metadata == {"note": "hello"}
    assert back.alpha == 0.1
