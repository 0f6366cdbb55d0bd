"""Prints a one-line verdict per acceptance criterion after the run.

The acceptance tests live in test_acceptance.py and are named
test_criterion_<n>_<slug>; this hook turns their outcomes into a
readable PASS/FAIL table in the terminal summary.
"""

import re

_ACCEPTANCE = {}
_NAME = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    m = _NAME.search(report.nodeid)
    if m:
        _ACCEPTANCE[int(m.group(1))] = (m.group(2).replace("_", " "),
                                        report.outcome)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        slug, outcome = _ACCEPTANCE[n]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {n} ({slug}): {verdict}")
