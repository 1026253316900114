"""Betweenness-guided compression: cut the cheapest edge, add the most useful one."""

from __future__ import annotations

from typing import Optional, Set, Tuple

from ..graph import Graph
from ..paths import psi_removal
from ..types import EdgeKey, Method, NodeId
from .base import ChainContext, RewiringStrategy, get_strategy, register_strategy, run_chain
from .models import EvolutionConfig, EvolutionTrajectory
from .search import pick_best, score_addition_candidates, score_removal_candidates, select_initial_edge


@register_strategy(Method.EFFECTIVE)
class EffectiveStrategy(RewiringStrategy):
    """Greedy choice by the local compression modulus ψ."""

    def initial_edge(self, ctx: ChainContext) -> Tuple[EdgeKey, NodeId, float]:
        table = ctx.table()
        edge, a = select_initial_edge(ctx.graph, table)
        return edge, a, psi_removal(ctx.graph, edge, table)

    def removal_edge(
        self, ctx: ChainContext, pivot: NodeId, forbidden: Optional[EdgeKey]
    ) -> Tuple[EdgeKey, float]:
        scores = score_removal_candidates(ctx.graph, pivot, forbidden, ctx.table())
        return pick_best(scores, maximize=False, rng=ctx.tie_rng)

    def addition_node(
        self, ctx: ChainContext, a: NodeId, candidates: Set[NodeId]
    ) -> Tuple[NodeId, float]:
        scores = score_addition_candidates(ctx.graph, a, candidates, ctx.table())
        return pick_best(scores, maximize=True, rng=ctx.tie_rng)


def compress(g: Graph, config: EvolutionConfig) -> EvolutionTrajectory:
    """Run the effective compression evolution on a copy of ``g``."""

    return run_chain(g, config, get_strategy(Method.EFFECTIVE))
