"""Chain driver shared by every rewiring strategy, plus the strategy registry."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import ClassVar, Dict, List, Optional, Set, Tuple, Type

import numpy as np

from ..bounds import addition_lower_bound, delta_on_addition, delta_on_removal, removal_upper_bound
from ..errors import (
    DisconnectedGraphError,
    DuplicateClosingEdgeError,
    InvalidConfigError,
    InvariantViolationError,
)
from ..generators.base import make_rng
from ..graph import Graph, clustering_coefficient, connected_components, degree_sequence
from ..paths import GeodesicTable, psi_addition
from ..spectral import fiedler_value
from ..types import EdgeKey, Method, Metric, NodeId, StepKind
from .models import EvolutionConfig, EvolutionStep, EvolutionTrajectory
from .search import admissible_addition_set, apply_node_constraint

__all__ = [
    "ChainContext",
    "RewiringStrategy",
    "register_strategy",
    "get_strategy",
    "run_chain",
    "graph_metrics",
]

logger = logging.getLogger(__name__)

# stream word separating strategy randomness from generator streams
_STRATEGY_STREAM = 0x5EED
_BOUND_TOLERANCE = 1e-9


@dataclass
class ChainContext:
    """Mutable working state of one run."""

    graph: Graph
    config: EvolutionConfig
    rng: np.random.Generator
    _table: Optional[GeodesicTable] = field(default=None, repr=False)
    _table_version: int = field(default=-1, repr=False)

    def table(self) -> GeodesicTable:
        """Geodesic table of the current graph state, rebuilt after each edit."""
        if self._table is None or self._table_version != self.graph.version:
            self._table = GeodesicTable(self.graph)
            self._table_version = self.graph.version
        return self._table

    @property
    def tie_rng(self) -> Optional[np.random.Generator]:
        return self.rng if self.config.randomize_ties else None


class RewiringStrategy(ABC):
    """How the chain picks its edges; the chain mechanics live in :func:`run_chain`."""

    method: ClassVar[Method]

    @abstractmethod
    def initial_edge(self, ctx: ChainContext) -> Tuple[EdgeKey, NodeId, float]:
        """First edge to cut, its endpoint that starts the chain, and its score."""

    @abstractmethod
    def removal_edge(
        self, ctx: ChainContext, pivot: NodeId, forbidden: Optional[EdgeKey]
    ) -> Tuple[EdgeKey, float]:
        """Edge at ``pivot`` to cut next, with its score."""

    @abstractmethod
    def addition_node(
        self, ctx: ChainContext, a: NodeId, candidates: Set[NodeId]
    ) -> Tuple[NodeId, float]:
        """Node that receives the next edge from ``a``, with its score."""


# ----------------------------------------------------------------------
# Strategy registry utilities
# ----------------------------------------------------------------------

_STRATEGY_REGISTRY: Dict[Method, Type[RewiringStrategy]] = {}


def register_strategy(method: Method):
    """Decorator for registering rewiring strategies."""

    def decorator(cls: Type[RewiringStrategy]) -> Type[RewiringStrategy]:
        _STRATEGY_REGISTRY[method] = cls
        cls.method = method
        return cls

    return decorator


def get_strategy(method: Method) -> RewiringStrategy:
    # strategies register themselves on import
    from . import baseline, effective  # noqa: F401

    try:
        return _STRATEGY_REGISTRY[Method(method)]()
    except KeyError as exc:
        raise InvalidConfigError(f"No strategy registered for method {method}") from exc


# ----------------------------------------------------------------------
# Metrics
# ----------------------------------------------------------------------


def graph_metrics(
    g: Graph, metrics: Tuple[Metric, ...], table: Optional[GeodesicTable] = None
) -> Dict[str, float]:
    """Requested metric values of ``g`` keyed by metric name."""

    values: Dict[str, float] = {}
    for metric in metrics:
        if metric is Metric.AVG_DISTANCE:
            values[metric.value] = _average_distance(table or GeodesicTable(g))
        elif metric is Metric.CLUSTERING:
            values[metric.value] = clustering_coefficient(g)
        elif metric is Metric.FIEDLER:
            values[metric.value] = fiedler_value(g)
    return values


def _average_distance(table: GeodesicTable) -> float:
    n = table.node_count
    if n < 2:
        return 0.0
    if not table.finite.all():
        return float("inf")
    return float(table.dist.sum()) / (n * (n - 1))


# ----------------------------------------------------------------------
# Chain driver
# ----------------------------------------------------------------------


@dataclass
class _HalfStep:
    pivot: NodeId
    far: NodeId
    psi: float
    disconnected: bool
    delta: Optional[float] = None
    bound: Optional[float] = None


class _Chain:
    def __init__(self, graph: Graph, config: EvolutionConfig, strategy: RewiringStrategy) -> None:
        self.original = graph
        self.config = config
        self.strategy = strategy
        self.ctx = ChainContext(
            graph=graph.copy(),
            config=config,
            rng=make_rng(config.seed, _STRATEGY_STREAM),
        )
        self.steps: List[EvolutionStep] = []
        self.warnings: List[str] = []

    # -- cuts ----------------------------------------------------------
    def cut(self, edge: EdgeKey, pivot: NodeId, psi: float) -> _HalfStep:
        g = self.ctx.graph
        far = edge.other(pivot)
        delta = bound = None
        if self.config.check_bounds:
            delta = delta_on_removal(g, edge).mean_change
            bound = removal_upper_bound(g, edge)
            if delta > bound + _BOUND_TOLERANCE:
                raise InvariantViolationError(
                    f"cutting {tuple(edge)} raised the average distance by {delta}, above the bound {bound}"
                )
        g.remove_edge(pivot, far)
        disconnected = not self.ctx.table().finite.all()
        logger.debug(f"cut ({pivot}, {far}) psi={psi} disconnected={disconnected}")
        return _HalfStep(pivot, far, psi, disconnected, delta, bound)

    # -- additions -----------------------------------------------------
    def add(
        self,
        half: _HalfStep,
        index: int,
        kind: StepKind,
        anchor: Optional[NodeId] = None,
        target: Optional[NodeId] = None,
    ) -> EvolutionStep:
        a = half.far
        fallback = False
        if target is None:
            candidates = admissible_addition_set(self.ctx.graph, a, half.pivot, anchor)
            if self.config.constraint is not None:
                candidates, fallback = apply_node_constraint(candidates, a, self.config.constraint)
                if fallback:
                    self.warnings.append(f"step {index}: constraint fallback at node {a}")
            target, psi_add = self.strategy.addition_node(self.ctx, a, candidates)
        else:
            psi_add = self._closing_score(a, target)
        delta = bound = None
        if self.config.check_bounds and not half.disconnected:
            delta, bound = self._check_addition(a, target)
        self.ctx.graph.add_edge(a, target)
        logger.debug(f"add ({a}, {target}) psi={psi_add}")
        step = EvolutionStep(
            index=index,
            kind=kind,
            cut_pivot=half.pivot,
            cut_far=a,
            add_from=a,
            add_to=target,
            psi_cut=half.psi,
            psi_add=psi_add,
            disconnected_after_cut=half.disconnected,
            constraint_fallback=fallback,
            cut_delta=half.delta,
            cut_bound=half.bound,
            add_delta=delta,
            add_bound=bound,
        )
        self._finish_step(step)
        return step

    def _closing_score(self, a: NodeId, b: NodeId) -> float:
        return psi_addition(self.ctx.graph, (a, b), self.ctx.table())

    def _check_addition(self, a: NodeId, target: NodeId) -> Tuple[float, float]:
        g = self.ctx.graph
        decrease = -delta_on_addition(g, (a, target)).mean_change
        bound = addition_lower_bound(g, (a, target))
        if decrease + _BOUND_TOLERANCE < bound:
            raise InvariantViolationError(
                f"adding ({a}, {target}) lowered the average distance by {decrease}, below the bound {bound}"
            )
        return decrease, bound

    def _finish_step(self, step: EvolutionStep) -> None:
        g = self.ctx.graph
        if g.edge_count != self.original.edge_count:
            raise InvariantViolationError(f"step {step.index} changed the edge count to {g.edge_count}")
        table = self.ctx.table()
        if not table.finite.all():
            raise InvariantViolationError(f"step {step.index} left the graph disconnected")
        every = self.config.record_metrics_every
        if every and step.index % every == 0:
            step.avg_distance = _average_distance(table)
        self.steps.append(step)

    # -- closing -------------------------------------------------------
    def closable(self, q: NodeId, b: NodeId, disconnected: bool) -> bool:
        g = self.ctx.graph
        if q == b or g.has_edge(q, b):
            return False
        if not disconnected:
            return True
        home = next(c for c in connected_components(g) if q in c)
        return b not in home

    def run(self, n_max: int) -> None:
        strategy, ctx = self.strategy, self.ctx
        edge, a, psi = strategy.initial_edge(ctx)
        anchor = edge.other(a)
        # the anchor is the pivot of the first cut, so the chain starts at a
        half = self.cut(edge, anchor, psi)
        step = self.add(half, 1, StepKind.INITIAL, anchor=anchor)
        index = 1
        while index < n_max - 1:
            index += 1
            step = self._advance(step, index, StepKind.CHAIN)

        tip, forbidden = step.add_to, step.added_edge
        for _ in range(ctx.graph.node_count + 1):
            index += 1
            edge, psi = strategy.removal_edge(ctx, tip, forbidden)
            half = self.cut(edge, tip, psi)
            if self.closable(half.far, anchor, half.disconnected):
                self.add(half, index, StepKind.CLOSING, target=anchor)
                return
            step = self.add(half, index, StepKind.EXTENSION)
            tip, forbidden = step.add_to, step.added_edge
        raise DuplicateClosingEdgeError(
            f"could not close the chain on node {anchor} within {ctx.graph.node_count} extensions"
        )

    def _advance(self, previous: EvolutionStep, index: int, kind: StepKind) -> EvolutionStep:
        tip = previous.add_to
        edge, psi = self.strategy.removal_edge(self.ctx, tip, previous.added_edge)
        half = self.cut(edge, tip, psi)
        return self.add(half, index, kind)


def run_chain(g: Graph, config: EvolutionConfig, strategy: RewiringStrategy) -> EvolutionTrajectory:
    """Run the cut/add chain on a copy of ``g`` and verify conservation."""

    if len(connected_components(g)) != 1:
        raise DisconnectedGraphError("evolution needs a connected input graph")
    n_max = config.validate_for(g)
    logger.info(
        f"Starting {strategy.method.value} evolution: n={g.node_count} |E|={g.edge_count} "
        f"P_rew={config.rewiring_fraction} N_max={n_max}"
    )
    chain = _Chain(g, config, strategy)
    initial_metrics = graph_metrics(g, config.metrics)
    chain.run(n_max)

    final = chain.ctx.graph
    trajectory = EvolutionTrajectory(
        method=strategy.method,
        config=config,
        n_max=n_max,
        initial_fingerprint=g.fingerprint(),
        initial_node_count=g.node_count,
        initial_edge_count=g.edge_count,
        initial_degree_sequence=degree_sequence(g),
        steps=chain.steps,
        final_graph=final,
        initial_metrics=initial_metrics,
        final_metrics=graph_metrics(final, config.metrics, chain.ctx.table()),
        warnings=chain.warnings,
    )
    report = trajectory.conservation()
    if not report.ok:
        raise InvariantViolationError(f"evolution broke conservation: {report.model_dump()}")
    logger.info(
        f"Finished {strategy.method.value} evolution in {len(chain.steps)} steps: "
        f"{trajectory.initial_metrics.get('avg_distance')} -> {trajectory.final_metrics.get('avg_distance')}"
    )
    return trajectory
