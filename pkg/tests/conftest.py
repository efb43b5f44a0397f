"""Shared fixtures and the acceptance-criteria summary hook.

Tests marked with @pytest.mark.criterion(num, desc) feed a registry;
after the run, one PASS/FAIL line per criterion is printed so the
acceptance state is readable at a glance.  A criterion passes only if
every one of its sub-tests passed.
"""

import collections
import json
import pathlib

import pytest

import panel_builder

_RESULTS = collections.defaultdict(lambda: {"passed": 0, "failed": 0, "desc": ""})


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(num, desc): sub-test of one numbered acceptance criterion"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    entry = _RESULTS[marker.args[0]]
    if len(marker.args) > 1:
        entry["desc"] = marker.args[1]
    if report.passed:
        entry["passed"] += 1
    elif report.failed:
        entry["failed"] += 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        entry = _RESULTS[num]
        total = entry["passed"] + entry["failed"]
        verdict = "PASS" if entry["failed"] == 0 and entry["passed"] > 0 else "FAIL"
        terminalreporter.write_line(
            f"ACCEPTANCE criterion {num}: {verdict} "
            f"- {entry['passed']}/{total} sub-checks passed - {entry['desc']}"
        )


@pytest.fixture(scope="session")
def panel_csv(tmp_path_factory):
    """The rebuilt reference panel, written once per session."""
    path = tmp_path_factory.mktemp("panel") / "panel_fixture.csv"
    panel_builder.write_panel_csv(path)
    return path


@pytest.fixture(scope="session")
def synth_oracle():
    """Frozen per-seed expectations from the one-time oracle run."""
    with open(pathlib.Path(__file__).parent / "data" / "synth_oracle.json", encoding="utf-8") as fh:
        return json.load(fh)
