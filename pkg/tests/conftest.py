import numpy as np
import pytest

from tridct.cheb2d import random_theta


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def thetas(rng):
    """100 uniform points of the fundamental triangle."""
    return random_theta(100, rng)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
