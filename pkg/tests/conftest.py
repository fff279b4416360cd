import os

import pytest

_CRITERIA = {}


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False,
                     help="also run the long brute-force and window checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion reported in the summary")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow") or os.environ.get("TWOSAT_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow tier: pass --slow or set TWOSAT_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        if call.excinfo is None:
            outcome = "PASS"
        elif call.excinfo.errisinstance(pytest.skip.Exception):
            outcome = "SKIP"
        else:
            outcome = "FAIL"
        _CRITERIA[name] = outcome if _CRITERIA.get(name, "PASS") == "PASS" else _CRITERIA[name]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        terminalreporter.write_line(f"{_CRITERIA[name]:4}  {name}")
