import pytest

from oswap.combinatorics import SortingNetwork, Tableau

FIG1_WORD = (5, 1, 2, 4, 1, 3, 5, 4, 2, 1, 5, 3, 2, 4, 3)
FIG1_ROWS = ((1, 3, 4, 7, 11), (2, 6, 8, 14), (5, 12, 15), (9, 13), (10,))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fig1_tableau():
    return Tableau(FIG1_ROWS)


@pytest.fixture
def fig1_network():
    return SortingNetwork(6, FIG1_WORD)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
