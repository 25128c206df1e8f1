import numpy as np
import pytest

from apexlp import LpProblem

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_runtest_logreport(report):
    item_marks = getattr(report, "criterion", None)
    if item_marks is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        num, title = item_marks
        outcome = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        _criteria.setdefault((num, title, report.nodeid), outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep.criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title, nodeid), outcome in sorted(_criteria.items(), key=lambda kv: (kv[0][0], kv[0][2])):
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"[{outcome}] criterion {num}: {title} ({name})")


@pytest.fixture
def unit_square():
    A = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    b = np.array([1.0, 1.0, 0.0, 0.0])
    return LpProblem(A, b, np.array([2.0, 1.0]))


def half_space(a, b, c=None):
    a = np.atleast_1d(np.asarray(a, dtype=float))
    c = np.ones_like(a) if c is None else c
    return LpProblem(a[None, :], np.array([float(b)]), c)
