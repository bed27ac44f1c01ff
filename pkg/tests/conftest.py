from __future__ import annotations

import pytest

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion exercised by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "passed": 0, "failed": 0})
    if report.when == "call" or (report.when == "setup" and not report.passed):
        entry["passed" if report.passed else "failed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        status = "PASS" if e["failed"] == 0 and e["passed"] > 0 else "FAIL"
        total = e["passed"] + e["failed"]
        terminalreporter.write_line(
            f"criterion {number}: {status}  {e['title']} ({e['passed']}/{total} tests passed)")
