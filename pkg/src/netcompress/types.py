"""
Shared type definitions for graph rewiring experiments.
"""

from enum import Enum
from typing import Any, NamedTuple, Tuple, Union

import numpy as np
from numpy.typing import NDArray

from .errors import SelfLoopError

NodeId = int
Distance = Union[int, float]
EdgeTuple = Tuple[int, int]
DistanceMatrix = NDArray[np.floating[Any]]

INFINITE: float = float("inf")


class EdgeKey(NamedTuple):
    """Undirected edge stored with ``u < v``."""

    u: NodeId
    v: NodeId

    @classmethod
    def of(cls, a: NodeId, b: NodeId) -> "EdgeKey":
        """Canonical key for the edge joining ``a`` and ``b``."""
        a, b = int(a), int(b)
        if a == b:
            raise SelfLoopError(a)
        return cls(a, b) if a < b else cls(b, a)

    def other(self, node: NodeId) -> NodeId:
        """Endpoint opposite to ``node``."""
        if node == self.u:
            return self.v
        if node == self.v:
            return self.u
        raise ValueError(f"node {node} is not an endpoint of {tuple(self)}")


class GeneratorKind(str, Enum):
    """Supported synthetic network models."""
    BA = "ba"
    WS = "ws"
    ER = "er"
    MULTIPOP = "multipop"


class Method(str, Enum):
    """Rewiring strategies."""
    EFFECTIVE = "effective"
    RANDOM = "random"


class Metric(str, Enum):
    """Graph metrics that experiments can record."""
    AVG_DISTANCE = "avg_distance"
    CLUSTERING = "clustering"
    FIEDLER = "fiedler"


class StepKind(str, Enum):
    """Role of a rewiring step in the chain."""
    INITIAL = "initial"
    CHAIN = "chain"
    EXTENSION = "extension"
    CLOSING = "closing"


class Scale(str, Enum):
    """Experiment size presets."""
    DESK = "desk"
    FULL = "full"
