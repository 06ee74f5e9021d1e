import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

ACCEPTANCE_LINES: list[str] = []


def random_polygon(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def multiset_distance(a, b) -> float:
    """Largest pairing error under the optimal one-to-one matching."""
    a, b = np.asarray(a), np.asarray(b)
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
