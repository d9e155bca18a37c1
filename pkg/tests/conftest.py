import time

import pytest

from csgk.config import RunConfig
from csgk.suites import SUITES, run_suite

_CRITERIA: dict[int, tuple[bool, str]] = {}


class Criterion:
    """Records a pass/fail line for one acceptance criterion."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        _CRITERIA[number] = (False, title)

    def passed(self, note: str = "") -> None:
        _CRITERIA[self.number] = (True, f"{self.title}{': ' + note if note else ''}")


@pytest.fixture
def criterion():
    return Criterion


@pytest.fixture(scope="session")
def default_run():
    """Every suite once under the default configuration, with wall times."""
    cfg = RunConfig()
    out = {}
    for name in SUITES:
        t0 = time.perf_counter()
        rep = run_suite(name, cfg)
        out[name] = (rep, time.perf_counter() - t0)
    return out


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, text = _CRITERIA[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}  {text}")
