"""
Shared test configuration, fixtures, and markers for netcompress tests.
"""

from pathlib import Path
from typing import Callable

import pytest
from hypothesis import settings

from netcompress.graph import Graph

# property tests without their own example count follow the active profile;
# the slow run selects "acceptance" with --hypothesis-profile
settings.register_profile("dev", max_examples=100, deadline=None)
settings.register_profile("acceptance", max_examples=500, deadline=None)
settings.load_profile("dev")


def pytest_configure(config):
    """Configure test markers."""
    config.addinivalue_line("markers", "slow: marks tests as slow (>1s)")
    config.addinivalue_line("markers", "property: marks property-based tests")
    config.addinivalue_line("markers", "unit: marks unit tests (fast, pure logic)")
    config.addinivalue_line("markers", "integration: marks integration tests")


def cycle_graph(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edge_list(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edge_list(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


@pytest.fixture
def cycle() -> Callable[[int], Graph]:
    """Factory for the cycle C_n."""
    return cycle_graph


@pytest.fixture
def path() -> Callable[[int], Graph]:
    """Factory for the path P_n."""
    return path_graph


@pytest.fixture
def complete() -> Callable[[int], Graph]:
    return complete_graph


@pytest.fixture
def star() -> Callable[[int], Graph]:
    return star_graph


@pytest.fixture
def lollipop() -> Graph:
    """Triangle 0-1-2 with a pendant node 3 hanging off node 2."""
    return Graph.from_edge_list(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


@pytest.fixture
def write_text(tmp_path: Path) -> Callable[[str, str], Path]:
    """Write a small text file into the test's temporary directory."""

    def _write(name: str, body: str) -> Path:
        target = tmp_path / name
        target.write_text(body, encoding="utf-8")
        return target

    return _write
