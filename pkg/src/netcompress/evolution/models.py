"""Configuration and result records for rewiring evolutions."""

from __future__ import annotations

import math
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import InvalidConfigError, MissingAttributesError
from ..graph import Graph, connected_components, degree_sequence
from ..types import EdgeKey, Method, Metric, NodeId, StepKind

__all__ = [
    "NodeConstraint",
    "EvolutionConfig",
    "EvolutionStep",
    "EvolutionTrajectory",
    "ConservationReport",
]

ConstraintFn = Callable[[NDArray[np.float64], NDArray[np.float64]], float]


def euclidean(first: NDArray[np.float64], second: NDArray[np.float64]) -> float:
    return float(np.linalg.norm(first - second))


class NodeConstraint(BaseModel):
    """Per-node attribute vectors and thresholds gating where edges may be added.

    A node ``v`` may receive an edge from ``a`` when
    ``constraint_fn(attributes[a], attributes[v]) < thresholds[a]``.
    """

    attributes: Any = Field(..., description="n x d array of node attribute vectors")
    thresholds: Any = Field(..., description="Per-node threshold, length n")
    constraint_fn: Optional[ConstraintFn] = Field(
        None, description="Binary scoring function; Euclidean distance when omitted"
    )

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("attributes")
    @classmethod
    def as_matrix(cls, value: Any) -> NDArray[np.float64]:
        matrix = np.asarray(value, dtype=np.float64)
        if matrix.ndim == 1:
            matrix = matrix[:, None]
        if matrix.ndim != 2:
            raise ValueError("attributes must be a 2D array")
        return matrix

    @field_validator("thresholds")
    @classmethod
    def as_vector(cls, value: Any) -> NDArray[np.float64]:
        vector = np.asarray(value, dtype=np.float64)
        if vector.ndim != 1:
            raise ValueError("thresholds must be a 1D array")
        return vector

    @model_validator(mode="after")
    def validate_lengths(self) -> "NodeConstraint":
        if self.attributes.shape[0] != self.thresholds.shape[0]:
            raise ValueError("attributes and thresholds must cover the same nodes")
        return self

    @property
    def node_count(self) -> int:
        return int(self.thresholds.shape[0])

    def require_nodes(self, n: int) -> None:
        if self.node_count < n:
            raise MissingAttributesError(
                f"constraint covers {self.node_count} nodes but the graph has {n}"
            )

    def score(self, a: NodeId, v: NodeId) -> float:
        fn = self.constraint_fn or euclidean
        return float(fn(self.attributes[a], self.attributes[v]))

    def allows(self, a: NodeId, v: NodeId) -> bool:
        return bool(self.score(a, v) < self.thresholds[a])


class EvolutionConfig(BaseModel):
    """Parameters of one rewiring run."""

    rewiring_fraction: float = Field(..., ge=0.0, le=1.0, description="Evolution fraction P_rew")
    constraint: Optional[NodeConstraint] = Field(None, description="Optional addition constraint")
    record_metrics_every: int = Field(
        default=1, ge=0, description="Record the average distance every k steps; 0 records none"
    )
    seed: int = Field(default=0, ge=0, lt=2**64, description="Seed for random choices")
    randomize_ties: bool = Field(default=False, description="Break score ties at random")
    check_bounds: bool = Field(default=False, description="Verify distance bounds every step")
    metrics: Tuple[Metric, ...] = Field(
        default=(Metric.AVG_DISTANCE, Metric.CLUSTERING),
        description="Metrics captured before and after the run",
    )

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def n_max(self, edge_count: int) -> int:
        """Number of rewiring steps ``ceil(P_rew * |E|)``."""
        # rounding keeps 0.2 * 390 at 78 rather than 79
        return math.ceil(round(self.rewiring_fraction * edge_count, 9))

    def validate_for(self, g: Graph) -> int:
        if g.edge_count < 2:
            raise InvalidConfigError(f"evolution needs at least 2 edges, graph has {g.edge_count}")
        steps = self.n_max(g.edge_count)
        if steps <= 1:
            raise InvalidConfigError(
                f"rewiring_fraction={self.rewiring_fraction} gives {steps} steps on "
                f"{g.edge_count} edges; it must exceed 1/|E|"
            )
        if self.constraint is not None:
            self.constraint.require_nodes(g.node_count)
        return steps


class EvolutionStep(BaseModel):
    """One cut followed by one addition."""

    index: int = Field(..., ge=1, description="1-based step number")
    kind: StepKind
    cut_pivot: int = Field(..., description="Endpoint of the cut edge shared with the previous step")
    cut_far: int = Field(..., description="Endpoint of the cut edge that starts the addition")
    add_from: int
    add_to: int
    psi_cut: float = Field(..., description="Score of the cut edge, inf for a bridge")
    psi_add: float = Field(..., description="Score of the added edge")
    disconnected_after_cut: bool = False
    avg_distance: Optional[float] = Field(None, description="Average distance after the step")
    constraint_fallback: bool = False
    cut_delta: Optional[float] = None
    cut_bound: Optional[float] = None
    add_delta: Optional[float] = None
    add_bound: Optional[float] = None

    @property
    def cut_edge(self) -> EdgeKey:
        return EdgeKey.of(self.cut_pivot, self.cut_far)

    @property
    def added_edge(self) -> EdgeKey:
        return EdgeKey.of(self.add_from, self.add_to)


class ConservationReport(BaseModel):
    nodes_preserved: bool
    edges_preserved: bool
    connected: bool
    degree_sequence_preserved: bool

    @property
    def ok(self) -> bool:
        return (
            self.nodes_preserved
            and self.edges_preserved
            and self.connected
            and self.degree_sequence_preserved
        )


class EvolutionTrajectory(BaseModel):
    """Full record of an evolution run."""

    method: Method
    config: EvolutionConfig
    n_max: int
    initial_fingerprint: str
    initial_node_count: int
    initial_edge_count: int
    initial_degree_sequence: List[int]
    steps: List[EvolutionStep] = Field(default_factory=list)
    final_graph: Graph
    initial_metrics: Dict[str, float] = Field(default_factory=dict)
    final_metrics: Dict[str, float] = Field(default_factory=dict)
    warnings: List[str] = Field(default_factory=list)

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def conservation(self) -> ConservationReport:
        g = self.final_graph
        return ConservationReport(
            nodes_preserved=g.node_count == self.initial_node_count,
            edges_preserved=g.edge_count == self.initial_edge_count,
            connected=len(connected_components(g)) == 1,
            degree_sequence_preserved=degree_sequence(g) == self.initial_degree_sequence,
        )

    @property
    def constraint_fallbacks(self) -> int:
        return sum(step.constraint_fallback for step in self.steps)
