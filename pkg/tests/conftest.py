import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cbetrack.graph import Network


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def k6():
    return Network.from_edges(6, [(i, j) for i in range(6) for j in range(i + 1, 6)])


def random_connected(rng, n, p=0.5):
    """Random connected network for property tests (spanning path plus random extras)."""
    order = rng.permutation(n)
    edges = {tuple(sorted((int(order[i]), int(order[i + 1])))) for i in range(n - 1)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.add((i, j))
    return Network.from_edges(n, sorted(edges))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
