"""Laplacian spectrum, algebraic connectivity and distance scaling fits."""

from __future__ import annotations

import logging
import math
from typing import Any, List, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, Field

from .errors import ConvergenceError, DegenerateFitError, GraphTooSmallError, InvalidSpecError
from .graph import Graph, average_distance

__all__ = [
    "FitResult",
    "laplacian",
    "jacobi_eigh",
    "fiedler_value",
    "fiedler_pair",
    "fit_log",
    "fit_loglog",
    "ultra_small_world_gap",
]

logger = logging.getLogger(__name__)

JACOBI_TOLERANCE = 1e-10
MAX_SWEEPS = 100
ZERO_EIGENVALUE = 1e-9

FloatArray = NDArray[np.float64]


class FitResult(BaseModel):
    """Ordinary least squares of ``y`` against a transformed ``x``."""

    slope: float
    intercept: float
    r_squared: float = Field(..., ge=0.0, le=1.0)
    transform: str = Field(..., description="Applied to x before fitting: 'ln' or 'lnln'")

    def predict(self, x: float) -> float:
        tx = math.log(x) if self.transform == "ln" else math.log(math.log(x))
        return self.slope * tx + self.intercept


def laplacian(g: Graph) -> FloatArray:
    """Dense ``L = D - A``."""

    adjacency = g.adjacency_matrix()
    return np.diag(adjacency.sum(axis=1)) - adjacency


def _round_robin(n: int) -> List[Tuple[NDArray[np.intp], NDArray[np.intp]]]:
    """Rounds of disjoint index pairs covering every pair exactly once."""
    players = list(range(n + (n % 2)))
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        pairs = [
            (min(players[i], players[size - 1 - i]), max(players[i], players[size - 1 - i]))
            for i in range(size // 2)
        ]
        pairs = [(p, q) for p, q in pairs if q < n]
        if pairs:
            p_idx, q_idx = zip(*pairs)
            rounds.append((np.array(p_idx, dtype=np.intp), np.array(q_idx, dtype=np.intp)))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def _off_diagonal_norm(a: FloatArray) -> float:
    return float(np.sqrt(max((a * a).sum() - (np.diag(a) ** 2).sum(), 0.0)))


def jacobi_eigh(
    matrix: Any,
    tol: float = JACOBI_TOLERANCE,
    max_sweeps: int = MAX_SWEEPS,
) -> Tuple[FloatArray, FloatArray]:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Each round of a sweep applies a set of disjoint rotations at once.

    Returns:
        (ascending eigenvalues, eigenvectors as columns)
    """
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    v = np.eye(n)
    rounds = _round_robin(n)
    for sweep in range(max_sweeps + 1):
        if _off_diagonal_norm(a) <= tol:
            break
        if sweep == max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {_off_diagonal_norm(a):.3e})"
            )
        for p, q in rounds:
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c

            col_p, col_q = a[:, p], a[:, q]
            a[:, p] = col_p * c - col_q * s
            a[:, q] = col_p * s + col_q * c
            row_p, row_q = a[p, :], a[q, :]
            a[p, :] = c[:, None] * row_p - s[:, None] * row_q
            a[q, :] = s[:, None] * row_p + c[:, None] * row_q
            a[p, q] = 0.0
            a[q, p] = 0.0

            vec_p, vec_q = v[:, p], v[:, q]
            v[:, p] = vec_p * c - vec_q * s
            v[:, q] = vec_p * s + vec_q * c
        logger.debug(f"Jacobi sweep {sweep + 1}: off-diagonal norm {_off_diagonal_norm(a):.3e}")
    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    eigenvalues[np.abs(eigenvalues) < ZERO_EIGENVALUE] = 0.0
    return eigenvalues, v[:, order]


def fiedler_pair(g: Graph) -> Tuple[float, FloatArray]:
    """Second-smallest Laplacian eigenvalue and its eigenvector."""

    if g.node_count < 2:
        raise GraphTooSmallError("the Fiedler value needs at least 2 nodes")
    eigenvalues, vectors = jacobi_eigh(laplacian(g))
    return float(eigenvalues[1]), vectors[:, 1]


def fiedler_value(g: Graph) -> float:
    """Algebraic connectivity; 0 for disconnected graphs."""

    return fiedler_pair(g)[0]


def _fit(xs: FloatArray, ys: FloatArray, transform: str) -> FitResult:
    slope, intercept = np.polyfit(xs, ys, 1)
    residual = ys - (slope * xs + intercept)
    ss_res = float((residual**2).sum())
    ss_tot = float(((ys - ys.mean()) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(
        slope=float(slope),
        intercept=float(intercept),
        r_squared=min(max(r_squared, 0.0), 1.0),
        transform=transform,
    )


def _validated(xs: Sequence[float], ys: Sequence[float]) -> Tuple[FloatArray, FloatArray]:
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise DegenerateFitError("xs and ys must be 1D sequences of equal length")
    if x.size < 3:
        raise DegenerateFitError(f"need at least 3 points, got {x.size}")
    if np.unique(x).size < 2:
        raise DegenerateFitError("need at least 2 distinct x values")
    if (x <= 0).any():
        raise DegenerateFitError("sizes must be positive")
    return x, y


def fit_log(xs: Sequence[float], ys: Sequence[float]) -> FitResult:
    """Least squares of ``ys`` against ``ln(xs)``."""

    x, y = _validated(xs, ys)
    return _fit(np.log(x), y, "ln")


def fit_loglog(xs: Sequence[float], ys: Sequence[float]) -> FitResult:
    """Least squares of ``ys`` against ``ln(ln(xs))``; every x must exceed e."""

    x, y = _validated(xs, ys)
    if (x <= math.e).any():
        raise DegenerateFitError("ln ln x needs every x above e")
    return _fit(np.log(np.log(x)), y, "lnln")


def ultra_small_world_gap(n: int, seeds: Sequence[int]) -> float:
    """Mean average distance of WS(n, 4, 0.5) minus that of BA(n, 4)."""

    from .generators import GeneratorSpec
    from .types import GeneratorKind

    if n < 50:
        raise InvalidSpecError(f"the gap is only meaningful for n >= 50, got {n}")
    if not seeds:
        raise InvalidSpecError("at least one seed is required")
    ws = [
        average_distance(GeneratorSpec(kind=GeneratorKind.WS, n=n, k=4, p=0.5, seed=s).build())
        for s in seeds
    ]
    ba = [average_distance(GeneratorSpec(kind=GeneratorKind.BA, n=n, m=4, seed=s).build()) for s in seeds]
    return float(np.mean(ws) - np.mean(ba))
