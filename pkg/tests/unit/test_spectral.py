import math
from typing import Callable

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from netcompress.errors import ConvergenceError, DegenerateFitError, GraphTooSmallError, InvalidSpecError
from netcompress.graph import Graph, is_connected
from netcompress.spectral import (
    fiedler_pair,
    fiedler_value,
    fit_log,
    fit_loglog,
    jacobi_eigh,
    laplacian,
    ultra_small_world_gap,
)
from tests.strategies import any_graphs, to_networkx

pytestmark = pytest.mark.unit


def test_laplacian_rows_sum_to_zero(lollipop: Graph) -> None:
    matrix = laplacian(lollipop)

    assert np.array_equal(matrix.sum(axis=1), np.zeros(4))
    assert np.array_equal(np.diag(matrix), [2, 2, 3, 1])


@pytest.mark.parametrize("n", [2, 3, 5, 8, 13, 21, 34, 50])
def test_fiedler_closed_forms(
    n: int,
    complete: Callable[[int], Graph],
    cycle: Callable[[int], Graph],
    path: Callable[[int], Graph],
) -> None:
    assert fiedler_value(complete(n)) == pytest.approx(n, abs=1e-8)
    assert fiedler_value(path(n)) == pytest.approx(2 - 2 * math.cos(math.pi / n), abs=1e-8)
    if n >= 3:
        assert fiedler_value(cycle(n)) == pytest.approx(2 - 2 * math.cos(2 * math.pi / n), abs=1e-8)


def test_fiedler_pair_residual(lollipop: Graph) -> None:
    value, vector = fiedler_pair(lollipop)
    matrix = laplacian(lollipop)

    assert np.abs(matrix @ vector - value * vector).max() <= 1e-8
    assert np.linalg.norm(vector) == pytest.approx(1.0)


def test_jacobi_matches_numpy() -> None:
    rng = np.random.default_rng(3)
    raw = rng.normal(size=(9, 9))
    matrix = raw + raw.T

    values, vectors = jacobi_eigh(matrix)

    assert np.allclose(values, np.linalg.eigvalsh(matrix), atol=1e-8)
    assert np.allclose(matrix @ vectors, vectors * values, atol=1e-8)
    assert np.allclose(vectors.T @ vectors, np.eye(9), atol=1e-8)


def test_jacobi_sweep_limit() -> None:
    with pytest.raises(ConvergenceError):
        jacobi_eigh([[2.0, 1.0], [1.0, 2.0]], max_sweeps=0)


def test_jacobi_rejects_non_square() -> None:
    with pytest.raises(ValueError):
        jacobi_eigh(np.zeros((2, 3)))


def test_disconnected_graph_has_zero_fiedler_value() -> None:
    g = Graph.from_edge_list(5, [(0, 1), (1, 2), (3, 4)])

    assert fiedler_value(g) == 0.0


def test_single_node_has_no_fiedler_value() -> None:
    with pytest.raises(GraphTooSmallError):
        fiedler_value(Graph(1))


@pytest.mark.property
@settings(max_examples=60, deadline=None)
@given(any_graphs(min_nodes=2, max_nodes=10))
def test_fiedler_positive_iff_connected(g: Graph) -> None:
    value = fiedler_value(g)
    adjacency = nx.to_numpy_array(to_networkx(g), nodelist=list(g.nodes()))
    expected = np.linalg.eigvalsh(np.diag(adjacency.sum(axis=1)) - adjacency)[1]

    assert (value > 0) == is_connected(g)
    assert value == pytest.approx(expected, abs=1e-8)


def test_fit_log_recovers_line() -> None:
    xs = [100, 200, 400, 800]
    ys = [2.0 * math.log(x) + 1.0 for x in xs]

    fit = fit_log(xs, ys)

    assert fit.slope == pytest.approx(2.0)
    assert fit.intercept == pytest.approx(1.0)
    assert fit.r_squared == pytest.approx(1.0)
    assert fit.predict(1000) == pytest.approx(2.0 * math.log(1000) + 1.0)


def test_fit_loglog_recovers_line() -> None:
    xs = [100, 200, 400, 800]
    ys = [3.0 * math.log(math.log(x)) - 0.5 for x in xs]

    fit = fit_loglog(xs, ys)

    assert fit.slope == pytest.approx(3.0)
    assert fit.intercept == pytest.approx(-0.5)
    assert fit.transform == "lnln"


@pytest.mark.parametrize(
    "xs, ys",
    [
        ([10, 20], [1.0, 2.0]),
        ([10, 10, 10], [1.0, 2.0, 3.0]),
        ([0, 10, 20], [1.0, 2.0, 3.0]),
        ([10, 20, 30], [1.0, 2.0]),
    ],
)
def test_degenerate_fits(xs: list, ys: list) -> None:
    with pytest.raises(DegenerateFitError):
        fit_log(xs, ys)


def test_loglog_needs_sizes_above_e() -> None:
    with pytest.raises(DegenerateFitError):
        fit_loglog([2, 10, 20], [1.0, 2.0, 3.0])


def test_ultra_small_world_gap_validates_inputs() -> None:
    with pytest.raises(InvalidSpecError):
        ultra_small_world_gap(20, [0])
    with pytest.raises(InvalidSpecError):
        ultra_small_world_gap(100, [])
