"""Compression profiles over (fraction, seed) grids, computed with dask."""

# pyright: reportMissingImports=false, reportUnknownMemberType=false

from __future__ import annotations

import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union, cast

import dask
import numpy as np
import xarray as xr
from dask.delayed import Delayed, delayed  # type: ignore[assignment]

from ..errors import InvalidConfigError
from ..generators.config import GeneratorSpec
from ..graph import Graph
from ..types import Method, Metric
from .base import get_strategy, graph_metrics, run_chain
from .models import EvolutionConfig, NodeConstraint

__all__ = ["compression_profile", "run_profile_cell"]

logger = logging.getLogger(__name__)

DEFAULT_METRICS: Tuple[Metric, ...] = (Metric.AVG_DISTANCE, Metric.CLUSTERING, Metric.FIEDLER)

Source = Union[Graph, GeneratorSpec]


def _delayed_call(func: Callable[..., Any], *args: Any) -> Delayed:
    """Typed helper around ``dask.delayed`` to satisfy static analysis."""

    return cast(Delayed, delayed(func)(*args))


def run_profile_cell(
    source: Source,
    fraction: float,
    seed: int,
    method: Method,
    metrics: Tuple[Metric, ...],
    constraint: Optional[NodeConstraint] = None,
) -> Dict[str, float]:
    """Metrics after one evolution run; a fraction of 0 measures the input itself."""

    graph = source.with_seed(seed).build() if isinstance(source, GeneratorSpec) else source
    if fraction == 0.0:
        return graph_metrics(graph, metrics)
    config = EvolutionConfig(
        rewiring_fraction=fraction,
        seed=seed,
        constraint=constraint,
        record_metrics_every=0,
        metrics=metrics,
    )
    trajectory = run_chain(graph, config, get_strategy(method))
    return trajectory.final_metrics


def compression_profile(
    source: Source,
    fractions: Sequence[float],
    seeds: Sequence[int],
    *,
    method: Method = Method.EFFECTIVE,
    metrics: Sequence[Metric] = DEFAULT_METRICS,
    constraint: Optional[NodeConstraint] = None,
    scheduler: str = "threads",
) -> xr.Dataset:
    """Run one evolution per ``(fraction, seed)`` and aggregate the metrics.

    Args:
        source: fixed input graph, or a generator spec re-sampled for each seed
        fractions: ascending evolution fractions; 0.0 is the identity run
        seeds: one run per seed and fraction
        method: rewiring strategy
        metrics: metrics recorded at the end of each run
        constraint: optional addition constraint
        scheduler: dask scheduler name ("threads" or "synchronous")

    Returns:
        Dataset with per-run variables on ``(fraction, seed)`` and
        ``mean_<metric>``/``std_<metric>`` on ``fraction``.
    """
    fraction_list = [float(f) for f in fractions]
    seed_list = [int(s) for s in seeds]
    if not fraction_list:
        raise InvalidConfigError("at least one fraction is required")
    if not seed_list:
        raise InvalidConfigError("at least one seed is required")
    if fraction_list != sorted(fraction_list):
        raise InvalidConfigError("fractions must be sorted ascending")
    metric_tuple = tuple(Metric(m) for m in metrics)

    tasks: List[Delayed] = [
        _delayed_call(run_profile_cell, source, fraction, seed, Method(method), metric_tuple, constraint)
        for fraction in fraction_list
        for seed in seed_list
    ]
    logger.info(f"Profiling {len(tasks)} {Method(method).value} runs with the {scheduler} scheduler")
    results = cast(Tuple[Dict[str, float], ...], dask.compute(*tasks, scheduler=scheduler))

    shape = (len(fraction_list), len(seed_list))
    data_vars: Dict[str, Any] = {}
    for metric in metric_tuple:
        values = np.array([cell[metric.value] for cell in results], dtype=np.float64).reshape(shape)
        data_vars[metric.value] = (("fraction", "seed"), values)
        data_vars[f"mean_{metric.value}"] = (("fraction",), values.mean(axis=1))
        data_vars[f"std_{metric.value}"] = (("fraction",), values.std(axis=1))

    source_label = source.label() if isinstance(source, GeneratorSpec) else repr(source)
    return xr.Dataset(
        data_vars=data_vars,
        coords={"fraction": fraction_list, "seed": seed_list},
        attrs={"method": Method(method).value, "source": source_label},
    )
