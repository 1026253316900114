"""Shortest-path counting, edge betweenness and the local compression modulus.

Betweenness follows the ordered-pair convention: every ordered pair ``(s, t)``
contributes the fraction of its geodesics that traverse the edge, and the
edge's own endpoint pair is left out. For an existing edge this is the usual
ordered-pair edge betweenness minus exactly 2.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from typing import Dict, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, Field

from .errors import EdgeAlreadyExistsError, EdgeNotFoundError, SelfLoopError
from .graph import Graph, bfs_distances
from .types import INFINITE, DistanceMatrix, EdgeKey, EdgeTuple, NodeId

__all__ = [
    "PathCounts",
    "EdgeBetweennessMap",
    "GeodesicTable",
    "shortest_path_counts",
    "edge_betweenness_all",
    "edge_betweenness_single",
    "psi_removal",
    "psi_addition",
]

logger = logging.getLogger(__name__)

EdgeBetweennessMap = Dict[EdgeKey, float]

# Geodesic multiplicities are exact integers; float error only enters through
# the fractional accumulation.
_ZERO_TOLERANCE = 1e-9


class PathCounts(BaseModel):
    """Single-source geodesic multiplicities and predecessor DAG."""

    source: int = Field(..., ge=0, description="BFS source node")
    distances: List[float] = Field(..., description="Hop distance per node, inf when unreachable")
    sigma: List[int] = Field(..., description="Number of geodesics from the source to each node")
    predecessors: List[List[int]] = Field(
        ..., description="Predecessors of each node on geodesics from the source"
    )

    def count(self, target: NodeId) -> int:
        return self.sigma[target]


def _brandes_pass(
    g: Graph, source: NodeId
) -> Tuple[List[float], List[int], List[List[int]], List[int]]:
    n = g.node_count
    dist: List[float] = [INFINITE] * n
    sigma = [0] * n
    preds: List[List[int]] = [[] for _ in range(n)]
    order: List[int] = []
    dist[source] = 0
    sigma[source] = 1
    queue = deque([source])
    while queue:
        u = queue.popleft()
        order.append(u)
        for w in g.neighbors(u):
            if dist[w] == INFINITE:
                dist[w] = dist[u] + 1
                queue.append(w)
            if dist[w] == dist[u] + 1:
                sigma[w] += sigma[u]
                preds[w].append(u)
    return dist, sigma, preds, order


def shortest_path_counts(g: Graph, source: NodeId) -> PathCounts:
    """Geodesic multiplicities from ``source`` to every node."""

    g._check_node(source)
    dist, sigma, preds, _ = _brandes_pass(g, source)
    return PathCounts(source=source, distances=dist, sigma=sigma, predecessors=preds)


def edge_betweenness_all(g: Graph) -> EdgeBetweennessMap:
    """Betweenness of every edge, accumulated with Brandes' dependency sweep."""

    scores: Dict[EdgeKey, float] = {e: 0.0 for e in g.edges()}
    for s in g.nodes():
        _, sigma, preds, order = _brandes_pass(g, s)
        delta = [0.0] * g.node_count
        for w in reversed(order):
            for v in preds[w]:
                share = sigma[v] / sigma[w] * (1.0 + delta[w])
                scores[EdgeKey.of(v, w)] += share
                delta[v] += share
    return {e: _strip_endpoint_pair(value) for e, value in scores.items()}


def edge_betweenness_single(g: Graph, e: EdgeTuple) -> float:
    """Betweenness of one edge without materialising the whole map."""

    key = EdgeKey.of(*e)
    if not g.has_edge(key.u, key.v):
        raise EdgeNotFoundError(f"edge {tuple(key)} not present")
    total = 0.0
    for s in g.nodes():
        _, sigma, preds, order = _brandes_pass(g, s)
        delta = [0.0] * g.node_count
        for w in reversed(order):
            for v in preds[w]:
                share = sigma[v] / sigma[w] * (1.0 + delta[w])
                if (v, w) == (key.u, key.v) or (w, v) == (key.u, key.v):
                    total += share
                delta[v] += share
    return _strip_endpoint_pair(total)


def _strip_endpoint_pair(standard: float) -> float:
    value = standard - 2.0
    return 0.0 if value < _ZERO_TOLERANCE else value


class GeodesicTable:
    """All-pairs distances and geodesic counts for one graph state.

    Built level by level with dense frontier products, so every betweenness
    query afterwards is a handful of ``n x n`` array operations.
    """

    def __init__(self, g: Graph) -> None:
        n = g.node_count
        adjacency = g.adjacency_matrix()
        dist = np.full((n, n), np.inf)
        sigma = np.eye(n)
        np.fill_diagonal(dist, 0.0)
        reached = np.eye(n, dtype=bool)
        frontier = np.eye(n)
        level = 0
        while True:
            level += 1
            walks = frontier @ adjacency
            walks[reached] = 0.0
            fresh = walks > 0
            if not fresh.any():
                break
            dist[fresh] = level
            sigma[fresh] = walks[fresh]
            reached |= fresh
            frontier = walks
        self.graph_version = g.version
        self.node_count = n
        self.dist: DistanceMatrix = dist
        self.sigma: NDArray[np.float64] = sigma
        self.finite: NDArray[np.bool_] = np.isfinite(dist)

    def distance(self, u: NodeId, v: NodeId) -> float:
        return float(self.dist[u, v])

    def existing_edge_betweenness(self, u: NodeId, v: NodeId) -> float:
        """Betweenness of the present edge ``(u, v)``."""

        total = self._directed_share(u, v) + self._directed_share(v, u)
        return _strip_endpoint_pair(total)

    def _directed_share(self, u: NodeId, v: NodeId) -> float:
        via = self.dist[:, u][:, None] + 1.0 + self.dist[v, :][None, :]
        on_geodesic = self.finite & (via == self.dist)
        if not on_geodesic.any():
            return 0.0
        counts = np.outer(self.sigma[:, u], self.sigma[v, :])
        share = np.divide(counts, self.sigma, out=np.zeros_like(counts), where=on_geodesic)
        return float(share.sum())

    def added_edge_effect(
        self, a: NodeId, b: NodeId
    ) -> Tuple[float, NDArray[np.float64]]:
        """Betweenness of the absent edge ``(a, b)`` once added, and new distances."""

        d = self.dist
        via_ab = d[:, a][:, None] + 1.0 + d[b, :][None, :]
        via_ba = d[:, b][:, None] + 1.0 + d[a, :][None, :]
        new_dist = np.minimum(d, np.minimum(via_ab, via_ba))
        reachable = np.isfinite(new_dist)
        use_ab = reachable & (via_ab == new_dist)
        use_ba = reachable & (via_ba == new_dist)
        through = np.where(use_ab, np.outer(self.sigma[:, a], self.sigma[b, :]), 0.0)
        through += np.where(use_ba, np.outer(self.sigma[:, b], self.sigma[a, :]), 0.0)
        kept = np.where(self.finite & (d == new_dist), self.sigma, 0.0)
        total_paths = kept + through
        share = np.divide(through, total_paths, out=np.zeros_like(through), where=total_paths > 0)
        return _strip_endpoint_pair(float(share.sum())), new_dist

    def added_edge_betweenness(self, a: NodeId, b: NodeId) -> float:
        return self.added_edge_effect(a, b)[0]


def _table_for(g: Graph, table: Optional[GeodesicTable]) -> GeodesicTable:
    # a supplied table must describe the current state of g
    return table if table is not None else GeodesicTable(g)


def psi_removal(g: Graph, e: EdgeTuple, table: Optional[GeodesicTable] = None) -> float:
    """``B_g(e) * d_{g-e}(u, v)``; ``inf`` when ``e`` is a bridge."""

    key = EdgeKey.of(*e)
    if not g.has_edge(key.u, key.v):
        raise EdgeNotFoundError(f"edge {tuple(key)} not present")
    detour = bfs_distances(g, key.u, without=key)[key.v]
    if math.isinf(detour):
        return INFINITE
    betweenness = _table_for(g, table).existing_edge_betweenness(key.u, key.v)
    return betweenness * detour


def psi_addition(g_cut: Graph, e: EdgeTuple, table: Optional[GeodesicTable] = None) -> float:
    """``B_{g+e}(e) * d_g(a, v)`` for an absent edge.

    Across components the distance factor is taken as 1, so candidates that
    reconnect the graph are ranked by the betweenness of the new edge alone.
    """

    a, v = int(e[0]), int(e[1])
    if a == v:
        raise SelfLoopError(a)
    if g_cut.has_edge(a, v):
        raise EdgeAlreadyExistsError(f"edge {tuple(EdgeKey.of(a, v))} already present")
    geo = _table_for(g_cut, table)
    betweenness = geo.added_edge_betweenness(a, v)
    distance = geo.distance(a, v)
    return betweenness * (1.0 if math.isinf(distance) else distance)
