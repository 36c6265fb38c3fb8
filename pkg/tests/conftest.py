from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import RUNNING, point_at, random_matrix  # noqa: E402


@pytest.fixture
def M():
    return RUNNING


@pytest.fixture
def base(M):
    return point_at(M, ["0", "0", "0"])


@pytest.fixture
def p2(M):
    return point_at(M, ["0", "-0.1", "0"])


@pytest.fixture
def p3(M):
    return point_at(M, ["0", "0.1", "0"])


@pytest.fixture(scope="session")
def running_cells():
    from isbell.polyhedra import enumerate_cells

    return enumerate_cells(RUNNING)


@pytest.fixture(scope="session")
def running_chambers(running_cells):
    from isbell.chambers import all_chambers

    return all_chambers(RUNNING, running_cells)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def random_matrices():
    r = random.Random(7)
    return [random_matrix(r, 3, 4) for _ in range(5)]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
