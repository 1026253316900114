"""Random rewiring baseline: the same chain with uniform choices."""

from __future__ import annotations

from typing import Optional, Set, Tuple

from ..errors import EmptyCandidatesError, NoRemovalCandidateError
from ..graph import Graph
from ..paths import psi_addition, psi_removal
from ..types import EdgeKey, Method, NodeId
from .base import ChainContext, RewiringStrategy, get_strategy, register_strategy, run_chain
from .models import EvolutionConfig, EvolutionTrajectory
from .search import lower_degree_endpoint


@register_strategy(Method.RANDOM)
class RandomStrategy(RewiringStrategy):
    """Uniform choices from the same admissible sets; ψ is only recorded."""

    def initial_edge(self, ctx: ChainContext) -> Tuple[EdgeKey, NodeId, float]:
        edges = ctx.graph.edges()
        edge = edges[int(ctx.rng.integers(len(edges)))]
        return edge, lower_degree_endpoint(ctx.graph, edge), psi_removal(ctx.graph, edge, ctx.table())

    def removal_edge(
        self, ctx: ChainContext, pivot: NodeId, forbidden: Optional[EdgeKey]
    ) -> Tuple[EdgeKey, float]:
        options = [
            EdgeKey.of(pivot, v)
            for v in ctx.graph.neighbors(pivot)
            if forbidden is None or EdgeKey.of(pivot, v) != forbidden
        ]
        if not options:
            raise NoRemovalCandidateError(f"node {pivot} has no removable edge besides {forbidden}")
        edge = options[int(ctx.rng.integers(len(options)))]
        return edge, psi_removal(ctx.graph, edge, ctx.table())

    def addition_node(
        self, ctx: ChainContext, a: NodeId, candidates: Set[NodeId]
    ) -> Tuple[NodeId, float]:
        if not candidates:
            raise EmptyCandidatesError(f"no addition candidates for node {a}")
        ordered = sorted(candidates)
        node = ordered[int(ctx.rng.integers(len(ordered)))]
        return node, psi_addition(ctx.graph, (a, node), ctx.table())


def random_rewire(g: Graph, config: EvolutionConfig) -> EvolutionTrajectory:
    """Run the random rewiring baseline on a copy of ``g``."""

    return run_chain(g, config, get_strategy(Method.RANDOM))
