import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ebloch.rng import stream  # noqa: E402


@pytest.fixture
def rng():
    return stream(20251017)


ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion; outcome is taken from the test result."""

    def record(number, title):
        ACCEPTANCE[request.node.nodeid] = [number, title, None]

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.nodeid in ACCEPTANCE and rep.when == "call":
        ACCEPTANCE[item.nodeid][2] = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok in sorted(ACCEPTANCE.values()):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}")
