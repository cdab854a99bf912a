import numpy as np
import pytest

from corpus import make_corpus


@pytest.fixture(scope="session")
def corpus():
    return make_corpus()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def noise64():
    return np.random.default_rng(7).random((64, 64))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
