import numpy as np
import pytest

from estat import load_iris


def assert_close(actual, expected, rel=1e-9, abs_=1e-12):
    """Relative agreement, with an absolute floor for values near zero."""
    assert abs(actual - expected) <= max(rel * abs(expected), abs_), (actual, expected)


@pytest.fixture(scope="session")
def iris():
    return load_iris().values


@pytest.fixture(scope="session")
def iris_xyz(iris):
    return iris[:50], iris[50:100], iris[100:150]


@pytest.fixture
def rng():
    return np.random.default_rng(20241019)


def pytest_terminal_summary(terminalreporter):
    from helpers.acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
