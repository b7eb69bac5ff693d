import numpy as np
import pytest

from netdist.core import Network

# Reference networks shared by several test modules.
THREE_NODE_X = [[1, 0, 1], [0, 0, 0], [0, 0, 1]]
THREE_NODE_Y = [[0, 0, 0], [0, 0, 0], [0, 0, 1]]

DN0_A = [[2, 2, 1], [2, 2, 1], [1, 1, 3]]
DN0_B = [[2, 1, 1], [1, 3, 3], [1, 3, 3]]
DN0_C = [[2, 2, 1, 1], [2, 2, 1, 1], [1, 1, 3, 3], [1, 1, 3, 3]]

# zero-diagonal, symmetric reading of the bijection figure
BIJ_X = [[0, 3], [3, 0]]
BIJ_Y = [[0, 5, 5], [5, 0, 1], [5, 1, 0]]
BIJ_Z = [[0, 3, 3], [3, 0, 0], [3, 0, 0]]

TRACE_X = [[0, 5, 2], [3, 1, 4], [1, 4, 3]]
TRACE_Y = [[3, 4, 2], [3, 1, 5], [3, 3, 4]]

SPEC_X = [[2, 1], [2, 1]]
SPEC_Y = [[2, 3], [1, 3]]

OUTIN = [[1, 2, 3], [0, 0, 4], [0, 0, 5]]


def random_network(rng, n, low=-3.0, high=3.0, integer=False):
    if integer:
        return Network(rng.integers(-3, 4, size=(n, n)).astype(float))
    return Network(rng.uniform(low, high, size=(n, n)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one summary line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
