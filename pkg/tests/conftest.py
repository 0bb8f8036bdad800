import functools

import pytest

from dbnest.instances import builtin_instance
from dbnest.pipeline import prepare


@functools.lru_cache(maxsize=None)
def prepared(name: str, rotations: bool = False):
    return prepare(builtin_instance(name, rotations))


@pytest.fixture
def three():
    return prepared("three")


_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items(), key=lambda kv: int(kv[0].split("_")[2])):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
