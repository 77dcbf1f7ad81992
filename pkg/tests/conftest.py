import pytest

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    failed = rep.failed and (rep.when == "call" or rep.when == "setup")
    prev = _CRITERIA.get(number, (title, "PASS", ""))
    if failed:
        msg = rep.longrepr.reprcrash.message if hasattr(rep.longrepr, "reprcrash") else str(rep.longrepr)
        _CRITERIA[number] = (title, "FAIL", msg.splitlines()[0])
    elif rep.when == "call" and prev[1] != "FAIL":
        _CRITERIA[number] = (title, "PASS", "")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status, msg = _CRITERIA[number]
        line = f"{status} criterion {number}: {title}"
        terminalreporter.write_line(line + (f"  [{msg}]" if msg else ""))
