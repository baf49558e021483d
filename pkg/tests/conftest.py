"""Shared fixtures and the acceptance-summary reporter.

Tests in test_acceptance.py carry numbered labels; after the run a one-line
PASS/FAIL verdict per criterion is appended to the terminal summary so the
whole checklist is auditable at a glance.
"""

import numpy as np
import pytest

_ACCEPTANCE_RESULTS = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    _ACCEPTANCE_RESULTS[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance checklist")
    for nodeid in sorted(_ACCEPTANCE_RESULTS):
        outcome = _ACCEPTANCE_RESULTS[nodeid]
        label = nodeid.split("::")[-1].replace("test_", "", 1)
        terminalreporter.write_line("%-6s %s" % (outcome.upper(), label))
