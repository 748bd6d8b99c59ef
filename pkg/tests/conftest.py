import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cremona.crspace import build_cr  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow optional tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: optional long-running check (enable with --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_cache = {}


@pytest.fixture(scope="session")
def cr():
    def get(n, k, s):
        if (n, k, s) not in _cache:
            _cache[(n, k, s)] = build_cr(n, k, s)
        return _cache[(n, k, s)]

    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
