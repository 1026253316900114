import itertools
import math
from collections import defaultdict
from typing import Callable, Dict

import networkx as nx
import pytest
from hypothesis import given, settings

from netcompress.errors import EdgeAlreadyExistsError, EdgeNotFoundError, SelfLoopError
from netcompress.graph import Graph, add_edge
from netcompress.paths import (
    GeodesicTable,
    edge_betweenness_all,
    edge_betweenness_single,
    psi_addition,
    psi_removal,
    shortest_path_counts,
)
from netcompress.types import EdgeKey
from tests.strategies import absent_pairs, any_graphs, connected_graphs, to_networkx

pytestmark = pytest.mark.unit


def brute_force_betweenness(g: Graph) -> Dict[EdgeKey, float]:
    """Enumerate every geodesic of every ordered pair, skipping each edge's own endpoints."""
    oracle = to_networkx(g)
    scores: Dict[EdgeKey, float] = defaultdict(float)
    for s, t in itertools.permutations(g.nodes(), 2):
        if not nx.has_path(oracle, s, t):
            continue
        paths = list(nx.all_shortest_paths(oracle, s, t))
        for route in paths:
            for u, v in zip(route, route[1:]):
                key = EdgeKey.of(u, v)
                if {s, t} != {key.u, key.v}:
                    scores[key] += 1.0 / len(paths)
    return {e: scores[e] for e in g.edges()}


def test_path_betweenness(path: Callable[[int], Graph]) -> None:
    scores = edge_betweenness_all(path(4))

    assert scores[EdgeKey(0, 1)] == pytest.approx(4.0)
    assert scores[EdgeKey(1, 2)] == pytest.approx(6.0)
    assert scores[EdgeKey(2, 3)] == pytest.approx(4.0)


def test_cycle_and_star_betweenness(cycle: Callable[[int], Graph], star: Callable[[int], Graph]) -> None:
    assert all(value == pytest.approx(2.0) for value in edge_betweenness_all(cycle(4)).values())
    assert edge_betweenness_all(star(3))[EdgeKey(0, 1)] == pytest.approx(4.0)


def test_complete_graph_edges_carry_nothing(complete: Callable[[int], Graph]) -> None:
    assert all(value == 0.0 for value in edge_betweenness_all(complete(5)).values())


def test_single_edge_rejects_missing_edge(lollipop: Graph) -> None:
    with pytest.raises(EdgeNotFoundError):
        edge_betweenness_single(lollipop, (0, 3))


def test_shortest_path_counts(cycle: Callable[[int], Graph]) -> None:
    counts = shortest_path_counts(cycle(4), 0)

    assert counts.distances == [0, 1, 2, 1]
    assert counts.count(2) == 2
    assert sorted(counts.predecessors[2]) == [1, 3]


def test_psi_removal(path: Callable[[int], Graph], cycle: Callable[[int], Graph]) -> None:
    assert math.isinf(psi_removal(path(3), (0, 1)))
    # B = 2 on C4, and the detour after the cut is 3 hops
    assert psi_removal(cycle(4), (0, 1)) == pytest.approx(6.0)
    with pytest.raises(EdgeNotFoundError):
        psi_removal(cycle(4), (0, 2))


def test_psi_addition_within_and_across_components(path: Callable[[int], Graph]) -> None:
    # closing P4 into C4: B = 2 times d(0, 3) = 3
    assert psi_addition(path(4), (0, 3)) == pytest.approx(6.0)

    split = Graph.from_edge_list(4, [(0, 1), (2, 3)])
    # reconnecting edge is the middle of P4; the distance factor is 1
    assert psi_addition(split, (1, 2)) == pytest.approx(6.0)


def test_psi_addition_rejects_bad_edges(path: Callable[[int], Graph]) -> None:
    with pytest.raises(EdgeAlreadyExistsError):
        psi_addition(path(3), (0, 1))
    with pytest.raises(SelfLoopError):
        psi_addition(path(3), (2, 2))


def test_geodesic_table_counts(cycle: Callable[[int], Graph]) -> None:
    table = GeodesicTable(cycle(6))

    assert table.distance(0, 3) == 3.0
    assert table.sigma[0, 3] == 2.0
    assert table.finite.all()


@pytest.mark.property
@settings(max_examples=500, deadline=None)
@given(connected_graphs(min_nodes=3, max_nodes=8))
def test_betweenness_matches_path_enumeration(g: Graph) -> None:
    expected = brute_force_betweenness(g)
    actual = edge_betweenness_all(g)
    table = GeodesicTable(g)

    for edge in g.edges():
        assert actual[edge] == pytest.approx(expected[edge], abs=1e-9)
        assert table.existing_edge_betweenness(*edge) == pytest.approx(expected[edge], abs=1e-9)


@pytest.mark.property
@settings(max_examples=500, deadline=None)
@given(connected_graphs(min_nodes=3, max_nodes=10))
def test_standard_betweenness_is_two_more(g: Graph) -> None:
    # networkx counts unordered pairs including the endpoints
    standard = nx.edge_betweenness_centrality(to_networkx(g), normalized=False)
    scores = edge_betweenness_all(g)

    for (u, v), value in standard.items():
        assert 2.0 * value == pytest.approx(scores[EdgeKey.of(u, v)] + 2.0, abs=1e-9)


@pytest.mark.property
@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_nodes=4, max_nodes=9))
def test_added_edge_betweenness_matches_grown_graph(g: Graph) -> None:
    table = GeodesicTable(g)

    for a, b in absent_pairs(g):
        grown = add_edge(g, (a, b))
        assert table.added_edge_betweenness(a, b) == pytest.approx(
            edge_betweenness_single(grown, (a, b)), abs=1e-9
        )


@pytest.mark.property
@settings(max_examples=100, deadline=None)
@given(connected_graphs(min_nodes=3, max_nodes=12))
def test_single_edge_matches_full_map(g: Graph) -> None:
    scores = edge_betweenness_all(g)

    for edge, value in scores.items():
        assert edge_betweenness_single(g, edge) == pytest.approx(value, abs=1e-9)


@pytest.mark.property
@settings(max_examples=200, deadline=None)
@given(any_graphs(min_nodes=2, max_nodes=10))
def test_psi_removal_is_infinite_exactly_on_bridges(g: Graph) -> None:
    bridges = {EdgeKey.of(u, v) for u, v in nx.bridges(to_networkx(g))}
    table = GeodesicTable(g)

    for edge in g.edges():
        assert math.isinf(psi_removal(g, edge)) == (edge in bridges)
        assert math.isinf(psi_removal(g, edge, table)) == (edge in bridges)
