"""Undirected simple graphs and their structural queries."""

from __future__ import annotations

import hashlib
import json
import logging
from collections import deque
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
from numpy.typing import NDArray

from .errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    EdgeAlreadyExistsError,
    EdgeNotFoundError,
    GraphError,
    NodeOutOfRangeError,
    SelfLoopError,
)
from .types import INFINITE, Distance, DistanceMatrix, EdgeKey, EdgeTuple, NodeId

__all__ = [
    "Graph",
    "from_edge_list",
    "bfs_distances",
    "distance_matrix",
    "average_distance",
    "is_connected",
    "connected_components",
    "component_labels",
    "degree_sequence",
    "clustering_coefficient",
    "remove_edge",
    "add_edge",
    "largest_component",
]

logger = logging.getLogger(__name__)


class Graph:
    """Undirected simple graph on the dense node set ``0..n-1``.

    Queries never mutate. ``add_edge``/``remove_edge`` mutate in place and bump
    ``version`` so derived tables can be invalidated; use the module-level
    :func:`add_edge`/:func:`remove_edge` for a copy-on-write variant.
    """

    __slots__ = ("_adj", "_edge_count", "version")

    def __init__(self, node_count: int) -> None:
        if node_count < 1:
            raise GraphError(f"node_count must be positive, got {node_count}")
        self._adj: List[Set[int]] = [set() for _ in range(node_count)]
        self._edge_count = 0
        self.version = 0

    @classmethod
    def from_edge_list(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        *,
        strict: bool = True,
    ) -> "Graph":
        """Build a graph from ``(u, v)`` pairs.

        Args:
            n: number of nodes
            edges: node pairs, each in ``[0, n)``
            strict: raise on repeated pairs instead of collapsing them

        Returns:
            Graph
        """
        graph = cls(n)
        for pair in edges:
            u, v = int(pair[0]), int(pair[1])
            graph._check_node(u)
            graph._check_node(v)
            if u == v:
                raise SelfLoopError(u)
            if v in graph._adj[u]:
                if strict:
                    raise DuplicateEdgeError(min(u, v), max(u, v))
                continue
            graph._adj[u].add(v)
            graph._adj[v].add(u)
            graph._edge_count += 1
        return graph

    # ------------------------------------------------------------------
    # Basic accessors
    # ------------------------------------------------------------------
    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def nodes(self) -> range:
        return range(len(self._adj))

    def neighbors(self, v: NodeId) -> Tuple[int, ...]:
        """Sorted neighbours of ``v``."""
        self._check_node(v)
        return tuple(sorted(self._adj[v]))

    def neighbor_set(self, v: NodeId) -> frozenset:
        self._check_node(v)
        return frozenset(self._adj[v])

    def degree(self, v: NodeId) -> int:
        self._check_node(v)
        return len(self._adj[v])

    def degrees(self) -> NDArray[np.int64]:
        return np.fromiter((len(nbrs) for nbrs in self._adj), dtype=np.int64, count=len(self._adj))

    def has_edge(self, u: NodeId, v: NodeId) -> bool:
        self._check_node(u)
        self._check_node(v)
        return v in self._adj[u]

    def edges(self) -> List[EdgeKey]:
        """All edges as canonical keys in ascending order."""
        return [EdgeKey(u, v) for u, nbrs in enumerate(self._adj) for v in sorted(nbrs) if u < v]

    def adjacency_lists(self) -> List[Set[int]]:
        """Shallow copies of the neighbour sets."""
        return [set(nbrs) for nbrs in self._adj]

    def adjacency_matrix(self, dtype: type = np.float64) -> NDArray[np.floating]:
        n = len(self._adj)
        matrix = np.zeros((n, n), dtype=dtype)
        for u, v in self.edges():
            matrix[u, v] = 1
            matrix[v, u] = 1
        return matrix

    def copy(self) -> "Graph":
        clone = Graph(len(self._adj))
        clone._adj = [set(nbrs) for nbrs in self._adj]
        clone._edge_count = self._edge_count
        return clone

    def fingerprint(self) -> str:
        """SHA-256 over the node count and canonical edge list."""
        payload = {"n": self.node_count, "edges": [list(e) for e in self.edges()]}
        serialized = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(serialized.encode("utf-8")).hexdigest()

    # ------------------------------------------------------------------
    # In-place mutation
    # ------------------------------------------------------------------
    def add_edge(self, u: NodeId, v: NodeId) -> EdgeKey:
        self._check_node(u)
        self._check_node(v)
        key = EdgeKey.of(u, v)
        if v in self._adj[u]:
            raise EdgeAlreadyExistsError(f"edge {tuple(key)} already present")
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._edge_count += 1
        self.version += 1
        return key

    def remove_edge(self, u: NodeId, v: NodeId) -> EdgeKey:
        self._check_node(u)
        self._check_node(v)
        key = EdgeKey.of(u, v)
        if v not in self._adj[u]:
            raise EdgeNotFoundError(f"edge {tuple(key)} not present")
        self._adj[u].discard(v)
        self._adj[v].discard(u)
        self._edge_count -= 1
        self.version += 1
        return key

    # ------------------------------------------------------------------
    # Dunder helpers
    # ------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:  # pragma: no cover - graphs are mutable
        raise TypeError("Graph is unhashable; use fingerprint()")

    def __iter__(self) -> Iterator[EdgeKey]:
        return iter(self.edges())

    def __repr__(self) -> str:
        return f"Graph(node_count={self.node_count}, edge_count={self.edge_count})"

    def _check_node(self, v: int) -> None:
        if not 0 <= v < len(self._adj):
            raise NodeOutOfRangeError(f"node {v} outside [0, {len(self._adj)})")


def from_edge_list(n: int, edges: Iterable[Sequence[int]], *, strict: bool = True) -> Graph:
    """Functional alias of :meth:`Graph.from_edge_list`."""

    return Graph.from_edge_list(n, edges, strict=strict)


def bfs_distances(g: Graph, source: NodeId, *, without: Optional[EdgeTuple] = None) -> List[Distance]:
    """Hop distances from ``source``; unreachable nodes are ``inf``.

    ``without`` names an edge that is treated as absent, which gives the
    distances of ``g - e`` without copying the graph.
    """
    g._check_node(source)
    bu, bv = EdgeKey.of(*without) if without is not None else (-1, -1)
    dist: List[Distance] = [INFINITE] * g.node_count
    dist[source] = 0
    queue = deque([source])
    adj = g._adj
    while queue:
        u = queue.popleft()
        du = dist[u]
        for w in adj[u]:
            if dist[w] != INFINITE:
                continue
            if (u == bu and w == bv) or (u == bv and w == bu):
                continue
            dist[w] = du + 1  # type: ignore[operator]
            queue.append(w)
    return dist


def distance_matrix(g: Graph) -> DistanceMatrix:
    """All-pairs hop distances as a float array holding ``inf``."""

    return np.array([bfs_distances(g, s) for s in g.nodes()], dtype=np.float64)


def average_distance(g: Graph) -> float:
    """Mean geodesic distance over all ordered node pairs."""

    n = g.node_count
    if n < 2:
        return 0.0
    total = 0
    for s in g.nodes():
        row = bfs_distances(g, s)
        if INFINITE in row:
            raise DisconnectedGraphError("average distance is undefined on a disconnected graph")
        total += int(sum(row))
    return total / (n * (n - 1))


def connected_components(g: Graph) -> List[Set[int]]:
    """Components ordered by their smallest node."""

    seen = [False] * g.node_count
    components: List[Set[int]] = []
    for start in g.nodes():
        if seen[start]:
            continue
        seen[start] = True
        component = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g._adj[u]:
                if not seen[w]:
                    seen[w] = True
                    component.add(w)
                    stack.append(w)
        components.append(component)
    return components


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def component_labels(g: Graph) -> NDArray[np.int64]:
    """Index of the component each node belongs to."""

    labels = np.empty(g.node_count, dtype=np.int64)
    for index, component in enumerate(connected_components(g)):
        labels[list(component)] = index
    return labels


def degree_sequence(g: Graph) -> List[int]:
    """Degrees sorted non-increasing."""

    return sorted((len(nbrs) for nbrs in g._adj), reverse=True)


def clustering_coefficient(g: Graph) -> float:
    """Average local clustering; nodes of degree below 2 count as 0."""

    total = 0.0
    for v in g.nodes():
        nbrs = g._adj[v]
        k = len(nbrs)
        if k < 2:
            continue
        links = sum(len(g._adj[w] & nbrs) for w in nbrs) // 2
        total += links / (k * (k - 1) / 2)
    return total / g.node_count


def remove_edge(g: Graph, e: EdgeTuple) -> Graph:
    """Copy of ``g`` without ``e``."""

    result = g.copy()
    result.remove_edge(*e)
    return result


def add_edge(g: Graph, e: EdgeTuple) -> Graph:
    """Copy of ``g`` with ``e`` added."""

    result = g.copy()
    result.add_edge(*e)
    return result


def largest_component(g: Graph) -> Tuple[Graph, List[int]]:
    """Largest connected component, relabelled densely.

    Returns:
        (component graph, original node id of each new node)
    """
    components = connected_components(g)
    biggest = max(components, key=len)
    node_map = sorted(biggest)
    index: Dict[int, int] = {old: new for new, old in enumerate(node_map)}
    edges = [(index[u], index[v]) for u, v in g.edges() if u in index]
    if len(components) > 1:
        logger.info(
            f"Keeping largest component: {len(node_map)} of {g.node_count} nodes "
            f"({len(components)} components)"
        )
    return Graph.from_edge_list(len(node_map), edges), node_map
