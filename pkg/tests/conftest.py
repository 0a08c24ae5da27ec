from functools import lru_cache

import pytest

from torusquad import autgroup as ag
from torusquad.complex_core import build_torus_quadrangulation

GRID = [(n, k) for n in range(3, 9) for k in range(3, 9)]


@lru_cache(maxsize=None)
def quad(n, k):
    return build_torus_quadrangulation(n, k)


@lru_cache(maxsize=None)
def graph_group(n, k):
    return ag.graph_automorphisms(quad(n, k).graph)


@lru_cache(maxsize=None)
def cell_group(n, k):
    return ag.cellular_automorphisms(quad(n, k), graph_group=graph_group(n, k))


@pytest.fixture
def groups():
    return quad, graph_group, cell_group


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
