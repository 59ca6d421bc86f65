import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from extendo import MarketData  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def flat_market():
    return MarketData.flat(100.0, 0.08, 0.0, 0.25)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
