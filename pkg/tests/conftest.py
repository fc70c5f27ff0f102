from __future__ import annotations

import os
import re

import pytest
from hypothesis import HealthCheck, settings

from graphs import NET

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def net():
    return NET


# --- acceptance summary ---------------------------------------------------------

_CRITERIA: dict[int, list[str]] = {}
_NAMES = {
    1: "CI characterization (height = |E|)",
    2: "ACI implies height = |E| - 1",
    3: "LSS / Parity classification and height agree",
    4: "Betti formula equals the rank oracle",
    5: "first-syzygy generators expand to zero",
    6: "first-syzygy generators are a minimal generating set",
    7: "named homological values",
    8: "identity suite expands to zero",
}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or report.outcome != "passed":
        _CRITERIA.setdefault(int(m.group(1)), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_NAMES):
        outcomes = _CRITERIA.get(k)
        if not outcomes:
            verdict = "NOT RUN"
        elif all(o == "passed" for o in outcomes):
            verdict = "PASS"
        else:
            verdict = "FAIL"
        terminalreporter.write_line(f"criterion {k}: {verdict}  {_NAMES[k]}")
