"""Barabási–Albert, Watts–Strogatz, Erdős–Rényi and multi-population models."""

from __future__ import annotations

import logging
from typing import List, Set

import numpy as np

from ..graph import Graph
from ..types import GeneratorKind
from .base import MAX_CONNECTIVITY_ATTEMPTS, NetworkGenerator, register_generator
from .config import GeneratorSpec

__all__ = [
    "BarabasiAlbertGenerator",
    "WattsStrogatzGenerator",
    "ErdosRenyiGenerator",
    "MultiPopulationGenerator",
    "ba_network",
    "ws_network",
    "er_network",
    "multi_population",
]

logger = logging.getLogger(__name__)


@register_generator(GeneratorKind.BA)
class BarabasiAlbertGenerator(NetworkGenerator):
    """Preferential attachment grown from a complete core of ``m + 1`` nodes."""

    def sample(self, rng: np.random.Generator) -> Graph:
        n, m = self.spec.n, self.spec.m
        assert n is not None and m is not None
        core = m + 1
        graph = Graph(n)
        # one entry per edge endpoint, so a uniform draw is degree-proportional
        stubs: List[int] = []
        for u in range(core):
            for v in range(u + 1, core):
                graph.add_edge(u, v)
                stubs.extend((u, v))
        for new in range(core, n):
            targets: Set[int] = set()
            while len(targets) < m:
                targets.add(stubs[int(rng.integers(len(stubs)))])
            for target in sorted(targets):
                graph.add_edge(new, target)
                stubs.extend((new, target))
        return graph


def _ring_lattice(graph: Graph, k: int) -> None:
    n = graph.node_count
    for u in range(n):
        for j in range(1, k // 2 + 1):
            graph.add_edge(u, (u + j) % n)


def _rewire_ring(graph: Graph, k: int, p: float, rng: np.random.Generator) -> None:
    """Move the far endpoint of each lattice edge with probability ``p``."""
    n = graph.node_count
    for j in range(1, k // 2 + 1):
        for u in range(n):
            if rng.random() >= p:
                continue
            source, far = u, (u + j) % n
            if not graph.has_edge(source, far) or graph.degree(source) >= n - 1:
                continue
            while True:
                target = int(rng.integers(n))
                if target != source and not graph.has_edge(source, target):
                    break
            graph.remove_edge(source, far)
            graph.add_edge(source, target)


@register_generator(GeneratorKind.WS)
class WattsStrogatzGenerator(NetworkGenerator):
    """Ring lattice with random rewiring; resampled until connected."""

    max_attempts = MAX_CONNECTIVITY_ATTEMPTS

    def sample(self, rng: np.random.Generator) -> Graph:
        n, k, p = self.spec.n, self.spec.k, self.spec.p
        assert n is not None and k is not None and p is not None
        graph = Graph(n)
        _ring_lattice(graph, k)
        _rewire_ring(graph, k, p, rng)
        return graph


@register_generator(GeneratorKind.ER)
class ErdosRenyiGenerator(NetworkGenerator):
    max_attempts = MAX_CONNECTIVITY_ATTEMPTS

    def sample(self, rng: np.random.Generator) -> Graph:
        n = self.spec.node_count
        p = self.spec.edge_probability
        draws = rng.random((n, n))
        rows, cols = np.nonzero(np.triu(draws < p, k=1))
        return Graph.from_edge_list(n, zip(rows.tolist(), cols.tolist()))


@register_generator(GeneratorKind.MULTIPOP)
class MultiPopulationGenerator(NetworkGenerator):
    """Small-world modules chained by ``m_inter`` edges per consecutive pair."""

    def sample(self, rng: np.random.Generator) -> Graph:
        spec = self.spec
        modules, size = spec.modules, spec.module_size
        assert modules is not None and size is not None and spec.m_inter is not None
        graph = Graph(modules * size)
        for index in range(modules):
            module_spec = GeneratorSpec(
                kind=GeneratorKind.WS,
                n=size,
                k=spec.k,
                p=spec.p,
                seed=int(rng.integers(2**63)),
            )
            module = WattsStrogatzGenerator(module_spec).generate()
            offset = index * size
            for u, v in module.edges():
                graph.add_edge(offset + u, offset + v)
        for index in range(modules - 1):
            picks = rng.choice(size * size, size=spec.m_inter, replace=False)
            left, right = index * size, (index + 1) * size
            for pick in sorted(int(x) for x in picks):
                graph.add_edge(left + pick // size, right + pick % size)
        logger.debug(f"Chained {modules} modules of {size} nodes with {spec.m_inter} edges each")
        return graph


def ba_network(spec: GeneratorSpec) -> Graph:
    return BarabasiAlbertGenerator(spec).generate()


def ws_network(spec: GeneratorSpec) -> Graph:
    return WattsStrogatzGenerator(spec).generate()


def er_network(spec: GeneratorSpec) -> Graph:
    return ErdosRenyiGenerator(spec).generate()


def multi_population(spec: GeneratorSpec) -> Graph:
    return MultiPopulationGenerator(spec).generate()
