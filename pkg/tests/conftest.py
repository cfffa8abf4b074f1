import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from deltamat.core import DeltaMatroid  # noqa: E402

ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def dm(n, *sets):
    """Delta-matroid from 1-based label tuples."""
    word = 0
    for s in sets:
        word |= 1 << sum(1 << (i - 1) for i in s)
    return DeltaMatroid(n, word)


def s(*labels):
    """1-based labels -> mask."""
    return sum(1 << (i - 1) for i in labels)


@pytest.fixture
def D1():
    return dm(2, (), (1,), (2,))


@pytest.fixture
def D2():
    return dm(3, (), (1, 2), (1, 3))


@pytest.fixture
def D3():
    return dm(3, (), (1, 2), (1, 3), (2, 3))


@pytest.fixture
def D5():
    return dm(5, (), *[(i, j) for i in range(1, 6) for j in range(i + 1, 6)],
              (1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5), (2, 3, 4, 5))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.outcome != "passed"):
        return
    k, text = marker.args
    prev = ACCEPTANCE_RESULTS.get(k, ("PASS", text))[0]
    status = "PASS" if rep.outcome == "passed" and prev == "PASS" else "FAIL"
    ACCEPTANCE_RESULTS[k] = (status, text)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        status, text = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {status}  {text}")
