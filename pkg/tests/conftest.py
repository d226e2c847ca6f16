import math
import sys
from pathlib import Path

import pytest
from hypothesis import settings

from betatet import Params

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

LN2_HALF = math.log(2) / 2

# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def base_e():
    return Params(1, 1)


@pytest.fixture(scope="session")
def root_two():
    return Params(1, LN2_HALF)


@pytest.fixture(scope="session")
def skew():
    return Params(1 + 1j, 1 + 1j)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
