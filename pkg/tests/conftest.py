import pytest

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, limit): acceptance criterion n with a time limit in seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    n, limit = mark.args
    # parametrized criteria fold into one line: any failure fails it
    ok, seconds, _, _ = _criteria.get(n, (True, 0.0, limit, ""))
    _criteria[n] = (ok and report.passed, seconds + report.duration, limit,
                    item.originalname or item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, seconds, limit, name = _criteria[n]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"criterion {n:2d}: {verdict}  {seconds:7.2f}s (limit {limit}s)  {name}")
