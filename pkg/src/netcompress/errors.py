"""Custom exception hierarchy for netcompress."""

from typing import ClassVar, Optional


class NetCompressError(Exception):
    """Base exception for netcompress library."""

    code: ClassVar[str] = "NetCompressError"

    def __init__(self, message: str, cause: Optional[Exception] = None):
        super().__init__(message)
        self.cause = cause


class GraphError(NetCompressError):
    """Structural errors on graphs and edges."""
    pass


class PathError(NetCompressError):
    """Errors from shortest-path and betweenness computations."""
    pass


class GeneratorError(NetCompressError):
    """Synthetic network generation errors."""
    pass


class EvolutionError(NetCompressError):
    """Errors raised while running a rewiring evolution."""
    pass


class SpectralError(NetCompressError):
    """Eigen-decomposition and fitting errors."""
    pass


class DataError(NetCompressError):
    """File parsing and dataset errors."""
    pass


class SelfLoopError(GraphError):
    """An edge joins a node to itself."""

    code = "SelfLoop"

    def __init__(self, node: int, line: Optional[int] = None, cause: Optional[Exception] = None):
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"self-loop on node {node}{where}", cause)
        self.node = node
        self.line = line


class DuplicateEdgeError(GraphError):
    """The same undirected edge was given twice."""

    code = "DuplicateEdge"

    def __init__(self, u: int, v: int, line: Optional[int] = None, cause: Optional[Exception] = None):
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"duplicate edge ({u}, {v}){where}", cause)
        self.edge = (u, v)
        self.line = line


class NodeOutOfRangeError(GraphError):
    code = "NodeOutOfRange"


class EdgeNotFoundError(GraphError):
    code = "EdgeNotFound"


class EdgeAlreadyExistsError(GraphError):
    code = "EdgeAlreadyExists"


class DisconnectedGraphError(GraphError):
    code = "DisconnectedGraph"


class GraphTooSmallError(GraphError):
    code = "GraphTooSmall"


class InvalidSpecError(GeneratorError):
    code = "InvalidSpec"


class ConnectivityRetriesExhaustedError(GeneratorError):
    code = "ConnectivityRetriesExhausted"


class InvalidConfigError(EvolutionError):
    code = "InvalidConfig"


class NoRemovalCandidateError(EvolutionError):
    code = "NoRemovalCandidate"


class EmptyAdmissibleSetError(EvolutionError):
    code = "EmptyAdmissibleSet"


class EmptyCandidatesError(EvolutionError):
    code = "EmptyCandidates"


class DuplicateClosingEdgeError(EvolutionError):
    code = "DuplicateClosingEdge"


class MissingAttributesError(EvolutionError):
    code = "MissingAttributes"


class InvariantViolationError(EvolutionError):
    """A conservation law or distance bound was broken."""

    code = "InvariantViolation"


class DegenerateFitError(SpectralError):
    code = "DegenerateFit"


class ConvergenceError(SpectralError):
    code = "ConvergenceError"


class ParseError(DataError):
    """Malformed input file."""

    code = "ParseError"

    def __init__(self, message: str, line: Optional[int] = None, cause: Optional[Exception] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, cause)
        self.line = line


class MissingDatasetError(DataError):
    code = "MissingDataset"
