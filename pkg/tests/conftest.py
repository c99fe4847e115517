import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rumkit import load_fixture  # noqa: E402


@pytest.fixture(scope="session")
def cycle4():
    return load_fixture("cycle4")


@pytest.fixture(scope="session")
def doublehelix():
    return load_fixture("doublehelix")


@pytest.fixture(scope="session")
def diamond():
    return load_fixture("diamond")


@pytest.fixture(scope="session")
def boxkite():
    return load_fixture("boxkite")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
