import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _RESULTS.setdefault(n, []).append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_RESULTS):
        checks = _RESULTS[n]
        ok = all(p for _, p in checks)
        failed = [name for name, p in checks if not p]
        line = "criterion %d: %s (%d/%d checks)" % (n, "PASS" if ok else "FAIL",
                                                     sum(p for _, p in checks), len(checks))
        if failed:
            line += " failing: " + ", ".join(failed)
        tr.write_line(line)
