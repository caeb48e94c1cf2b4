import re
from fractions import Fraction

import pytest

from biquad.family import bs_form, bs_zero_set

P, Q = Fraction(1, 2), Fraction(3, 4)

_criteria: dict = {}


@pytest.fixture(scope="session")
def family_form():
    return bs_form(P, Q)


@pytest.fixture(scope="session")
def family_zeros():
    return bs_zero_set(P, Q)


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m or "test_acceptance" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        key = int(m.group(1))
        ok = report.outcome == "passed"
        prev = _criteria.get(key, (True, m.group(2)))
        _criteria[key] = (prev[0] and ok, prev[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        ok, name = _criteria[k]
        terminalreporter.write_line(f"criterion {k:>2}  {'PASS' if ok else 'FAIL'}  {name.replace('_', ' ')}")
