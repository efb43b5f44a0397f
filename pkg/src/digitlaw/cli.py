"""Command-line front end.

Subcommands: expected (print a law's distribution), analyze (test a
panel file), synth (generate a sample, optionally manipulated and
self-tested), stats (summary moments of one variable).

Exit codes: 0 success, 1 usage or configuration error, 2 data error.
Conformity verdicts never affect the exit code; gate on the json
output instead.
"""

from __future__ import annotations

import argparse
import os
import sys

from .digits import tally
from .errors import ConfigError, DegenerateInputError, DomainError, IngestionError
from .laws import LawKind, expected_distribution
from .panel import IngestionConfig, load_panel, summary_stats
from .report import (
    ConformityReport,
    PanelSpec,
    RatioSpec,
    VariableSpec,
    analyze,
    analyze_panel,
    plot_data,
    render,
)
from .synth import GENERATOR_NAME, SynthConfig, generate, render_sample_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

_LAW_NAMES = {
    "bl1": LawKind.FIRST_DIGIT,
    "bl2": LawKind.SECOND_DIGIT,
    "bl12": LawKind.FIRST_TWO_DIGITS,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; this package
    reserves 2 for data errors, so usage failures raise instead."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _parse_laws(text):
    laws = []
    for name in text.split(","):
        name = name.strip().lower()
        if not name:
            continue
        if name not in _LAW_NAMES:
            raise _UsageError(f"unknown law {name!r}; choose from {', '.join(_LAW_NAMES)}")
        law = _LAW_NAMES[name]
        if law not in laws:
            laws.append(law)
    if not laws:
        raise _UsageError("at least one law is required")
    return laws


def _parse_alpha(text):
    try:
        alpha = float(text)
    except ValueError:
        raise _UsageError(f"alpha must be a number, got {text!r}") from None
    if not 0.0 < alpha < 1.0:
        raise _UsageError(f"alpha must lie strictly between 0 and 1, got {alpha}")
    return alpha


def _parse_variable_specs(text):
    specs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, _, modifier = part.partition(":")
        if modifier not in ("", "split"):
            raise _UsageError(f"unknown variable modifier {modifier!r} in {part!r}")
        specs.append(VariableSpec(name.strip(), split=modifier == "split"))
    return tuple(specs)


def _parse_ratio_spec(text):
    body, _, modifier = text.partition(":")
    if modifier not in ("", "split"):
        raise _UsageError(f"unknown ratio modifier {modifier!r} in {text!r}")
    numerator, sep, denominator = body.partition("/")
    if not sep or not numerator.strip() or not denominator.strip():
        raise _UsageError(f"ratio must look like NUM/DEN, got {text!r}")
    return RatioSpec(numerator.strip(), denominator.strip(), split=modifier == "split")


def _write_output(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _write_plot_data(report, directory):
    os.makedirs(directory, exist_ok=True)
    for name, text in plot_data(report).items():
        with open(os.path.join(directory, f"{name}.tsv"), "w", encoding="utf-8") as handle:
            handle.write(text)


def _build_parser():
    parser = _Parser(prog="digitlaw", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_expected = sub.add_parser("expected", help="print a law's expected distribution")
    p_expected.add_argument("--law", required=True, help="bl1, bl2, or bl12")
    p_expected.add_argument("--format", default="plain", choices=["plain", "csv", "markdown", "json"])

    p_analyze = sub.add_parser("analyze", help="test a panel file against the digit laws")
    p_analyze.add_argument("--input", "-i", required=True, help="panel csv path")
    p_analyze.add_argument("--variables", default="", help="comma list of NAME or NAME:split")
    p_analyze.add_argument("--ratio", action="append", default=[], help="NUM/DEN or NUM/DEN:split (repeatable)")
    p_analyze.add_argument("--laws", default="bl1,bl2,bl12")
    p_analyze.add_argument("--alpha", default="0.05")
    p_analyze.add_argument("--format", "-f", default="markdown", choices=["markdown", "md", "csv", "json"])
    p_analyze.add_argument("--output", "-o", default=None, help="write report here instead of stdout")
    p_analyze.add_argument("--plot-data", default=None, metavar="DIR", help="write per-record bin/observed/expected tsv files")
    p_analyze.add_argument("--figures", default=None, metavar="DIR", help="render per-record charts as png files")
    p_analyze.add_argument("--layout", default="auto", choices=["auto", "long", "wide"])
    p_analyze.add_argument("--delimiter", default=",")
    p_analyze.add_argument("--strip-thousands", action="store_true")
    p_analyze.add_argument("--dataset-label", default=None)

    p_synth = sub.add_parser("synth", help="generate a seeded digit-law sample")
    p_synth.add_argument("--n", required=True)
    p_synth.add_argument("--seed", default="0")
    p_synth.add_argument("--exponent-range", default="0:6", help="LO:HI inclusive")
    p_synth.add_argument("--negative-fraction", default="0")
    p_synth.add_argument("--inject-rounding", default="0", metavar="P", help="rounding-up strength in [0, 1]")
    p_synth.add_argument("--output", "-o", default=None, help="write the sample csv here instead of stdout")
    p_synth.add_argument("--self-test", action="store_true", help="analyze the sample instead of only emitting it")
    p_synth.add_argument("--laws", default="bl1,bl2,bl12")
    p_synth.add_argument("--alpha", default="0.05")
    p_synth.add_argument("--format", "-f", default="markdown", choices=["markdown", "md", "csv", "json"])

    p_stats = sub.add_parser("stats", help="summary statistics of one panel variable")
    p_stats.add_argument("--input", "-i", required=True)
    p_stats.add_argument("--variable", required=True)
    p_stats.add_argument("--mode", default="raw", choices=["raw", "significand"])
    p_stats.add_argument("--layout", default="auto", choices=["auto", "long", "wide"])
    p_stats.add_argument("--delimiter", default=",")
    p_stats.add_argument("--strip-thousands", action="store_true")

    return parser


def _cmd_expected(args):
    name = args.law.strip().lower()
    if name not in _LAW_NAMES:
        raise _UsageError(f"unknown law {args.law!r}; choose from {', '.join(_LAW_NAMES)}")
    law = _LAW_NAMES[name]
    dist = expected_distribution(law)
    if args.format == "plain":
        lines = [f"{b} {dist.probs[b]:.5f}" for b in law.bins]
    elif args.format == "csv":
        lines = ["bin,probability"] + [f"{b},{dist.probs[b]:.5f}" for b in law.bins]
    elif args.format == "markdown":
        lines = ["| bin | probability |", "| --- | --- |"]
        lines += [f"| {b} | {dist.probs[b]:.5f} |" for b in law.bins]
    else:
        import json

        lines = [json.dumps({"law": law.value, "probs": {str(b): dist.probs[b] for b in law.bins}}, indent=2)]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _ingestion_config(args):
    return IngestionConfig(
        layout=args.layout,
        delimiter=args.delimiter,
        strip_thousands=args.strip_thousands,
    )


def _cmd_analyze(args):
    laws = _parse_laws(args.laws)
    alpha = _parse_alpha(args.alpha)
    variables = _parse_variable_specs(args.variables)
    ratios = tuple(_parse_ratio_spec(r) for r in args.ratio)
    if not variables and not ratios:
        raise _UsageError("nothing to analyze: pass --variables and/or --ratio")
    panels = load_panel(args.input, _ingestion_config(args))
    label = args.dataset_label or os.path.basename(args.input)
    report = analyze_panel(panels, PanelSpec(variables, ratios), laws, alpha, dataset=label)
    _write_output(render(report, args.format), args.output)
    if args.plot_data:
        _write_plot_data(report, args.plot_data)
    if args.figures:
        from .figures import save_figures

        save_figures(report, args.figures)
    return EXIT_OK


def _cmd_synth(args):
    try:
        n = int(args.n)
        seed = int(args.seed)
        lo_text, sep, hi_text = args.exponent_range.partition(":")
        if not sep:
            raise ValueError(f"exponent range must look like LO:HI, got {args.exponent_range!r}")
        config = SynthConfig(
            n=n,
            seed=seed,
            exponent_range=(int(lo_text), int(hi_text)),
            negative_fraction=float(args.negative_fraction),
            inject_rounding_strength=float(args.inject_rounding),
        )
    except (ValueError, DomainError) as exc:
        raise _UsageError(str(exc)) from None
    values = generate(config)
    if args.self_test:
        laws = _parse_laws(args.laws)
        alpha = _parse_alpha(args.alpha)
        report = ConformityReport(
            dataset=f"synthetic seed={seed} n={n}",
            alpha=alpha,
            metadata={
                "generator": GENERATOR_NAME,
                "config": {
                    "n": n,
                    "seed": seed,
                    "exponent_range": list(config.exponent_range),
                    "negative_fraction": config.negative_fraction,
                    "inject_rounding_strength": config.inject_rounding_strength,
                },
            },
        )
        report.slices = analyze(values, laws, alpha, label="synthetic")
        _write_output(render(report, args.format), args.output)
    else:
        _write_output(render_sample_csv(values), args.output)
    return EXIT_OK


def _cmd_stats(args):
    panels = load_panel(args.input, _ingestion_config(args))
    if args.variable not in panels:
        raise ConfigError(f"unknown variable {args.variable!r}; panel has {sorted(panels)}")
    series = panels[args.variable]
    stats = summary_stats(series.present_values(), mode=args.mode)
    lines = [
        "| n | min | max | mean | stdev | skewness | excess_kurtosis | cv |",
        "| --- | --- | --- | --- | --- | --- | --- | --- |",
        (
            f"| {stats.n} | {stats.min:.6g} | {stats.max:.6g} | {stats.mean:.6g} "
            f"| {stats.stdev:.6g} | {stats.skewness:.6g} | {stats.excess_kurtosis:.6g} "
            f"| {stats.cv:.6g} |"
        ),
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "expected":
            return _cmd_expected(args)
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "synth":
            return _cmd_synth(args)
        return _cmd_stats(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IngestionError, DegenerateInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
