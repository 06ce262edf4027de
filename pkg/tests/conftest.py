import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from datrtag import load_fragment  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def figure1():
    return load_fragment("figure1")


@pytest.fixture(scope="session")
def extended():
    return load_fragment("extended")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
