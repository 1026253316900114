"""Canned experiments that regenerate the data behind each reported figure."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import dask
import numpy as np
import pandas as pd
from dask.delayed import Delayed, delayed  # type: ignore[assignment]
from pydantic import BaseModel, Field, ValidationError

from .errors import DegenerateFitError, InvalidConfigError, MissingDatasetError
from .evolution.profile import Source, compression_profile
from .generators.config import GeneratorSpec
from .graph import average_distance, largest_component
from .io import PathLike, atomic_write_text, load_edge_list, profile_frame, write_table_csv
from .spectral import FitResult, fit_log, fit_loglog
from .types import GeneratorKind, Method, Metric, Scale

__all__ = [
    "FIGURES",
    "ReproduceOptions",
    "register_figure",
    "reproduce",
]

logger = logging.getLogger(__name__)

SCALE_DEFAULTS: Dict[Scale, Dict[str, int]] = {
    Scale.DESK: {"n": 100, "seeds": 5},
    Scale.FULL: {"n": 300, "seeds": 10},
}
DEFAULT_SIZES = (100, 200, 400, 800)
DEFAULT_FRACTIONS = (0.0, 0.1, 0.2, 0.3, 0.4)
DEGREE = 4
WS_REWIRING = 0.5
POPULATIONS = 5
INTER_EDGES = 2


class ReproduceOptions(BaseModel):
    """Parameters of one ``reproduce`` run; unset values come from the scale preset."""

    figure: str = Field(..., description="Figure recipe name")
    scale: Scale = Field(default=Scale.DESK)
    n: Optional[int] = Field(None, ge=25, description="Network size for evolution figures")
    seeds: Optional[int] = Field(None, ge=1, description="Number of seeds, numbered from 0")
    fractions: Optional[List[float]] = Field(None, min_length=1)
    sizes: Optional[List[int]] = Field(None, min_length=1, description="Sizes for the scaling figures")
    data: Optional[Path] = Field(None, description="Edge list for the real-network figure")
    scheduler: str = Field(default="threads")

    @property
    def node_count(self) -> int:
        return self.n if self.n is not None else SCALE_DEFAULTS[self.scale]["n"]

    @property
    def seed_list(self) -> List[int]:
        count = self.seeds if self.seeds is not None else SCALE_DEFAULTS[self.scale]["seeds"]
        return list(range(count))

    @property
    def fraction_list(self) -> List[float]:
        return sorted(self.fractions) if self.fractions is not None else list(DEFAULT_FRACTIONS)

    @property
    def size_list(self) -> List[int]:
        return sorted(self.sizes) if self.sizes is not None else list(DEFAULT_SIZES)

    def substitutions(self) -> List[str]:
        """Human-readable notes on where this run departs from the full-size setup."""
        notes = [f"scale: {self.scale.value}", f"network size n = {self.node_count}"]
        notes.append(f"seeds: {len(self.seed_list)} (0..{len(self.seed_list) - 1})")
        if self.node_count != SCALE_DEFAULTS[Scale.FULL]["n"]:
            notes.append(f"n = {self.node_count} replaces the full-size n = {SCALE_DEFAULTS[Scale.FULL]['n']}")
        if len(self.seed_list) != SCALE_DEFAULTS[Scale.FULL]["seeds"]:
            notes.append(
                f"{len(self.seed_list)} seeds replace the full-size {SCALE_DEFAULTS[Scale.FULL]['seeds']}"
            )
        return notes

    @classmethod
    def from_options(cls, **options: object) -> "ReproduceOptions":
        try:
            return cls(**{key: value for key, value in options.items() if value is not None})
        except ValidationError as exc:
            raise InvalidConfigError(f"invalid reproduce options: {exc.errors()[0]['msg']}", exc) from exc


FigureRecipe = Callable[[ReproduceOptions], Tuple[pd.DataFrame, List[str]]]

# ----------------------------------------------------------------------
# Figure registry utilities
# ----------------------------------------------------------------------

FIGURES: Dict[str, FigureRecipe] = {}


def register_figure(name: str):
    """Decorator for registering figure recipes."""

    def decorator(func: FigureRecipe) -> FigureRecipe:
        FIGURES[name] = func
        return func

    return decorator


# ----------------------------------------------------------------------
# Shared building blocks
# ----------------------------------------------------------------------


def _ba(n: int) -> GeneratorSpec:
    return GeneratorSpec(kind=GeneratorKind.BA, n=n, m=DEGREE)


def _ws(n: int) -> GeneratorSpec:
    return GeneratorSpec(kind=GeneratorKind.WS, n=n, k=DEGREE, p=WS_REWIRING)


def _er(n: int) -> GeneratorSpec:
    return GeneratorSpec(kind=GeneratorKind.ER, n=n, mean_degree=float(DEGREE))


def _multipop(n: int) -> GeneratorSpec:
    return GeneratorSpec(
        kind=GeneratorKind.MULTIPOP,
        modules=POPULATIONS,
        module_size=n // POPULATIONS,
        k=DEGREE,
        p=WS_REWIRING,
        m_inter=INTER_EDGES,
    )


def _spec_distance(spec: GeneratorSpec) -> float:
    return average_distance(spec.build())


def _distances(specs: Sequence[GeneratorSpec], scheduler: str) -> List[float]:
    tasks: List[Delayed] = [delayed(_spec_distance)(spec) for spec in specs]
    return list(dask.compute(*tasks, scheduler=scheduler))


def _profile_rows(
    source: Source,
    options: ReproduceOptions,
    methods: Sequence[Method],
    metrics: Tuple[Metric, ...],
    label_column: str,
    label: Optional[str] = None,
) -> pd.DataFrame:
    frames = []
    for method in methods:
        profile = compression_profile(
            source,
            options.fraction_list,
            options.seed_list,
            method=method,
            metrics=metrics,
            scheduler=options.scheduler,
        )
        frame = profile_frame(profile)
        frame.insert(1, label_column, label if label is not None else method.value)
        frames.append(frame)
    return pd.concat(frames, ignore_index=True)


def _method_comparison(source: Source, options: ReproduceOptions) -> pd.DataFrame:
    return _profile_rows(
        source,
        options,
        (Method.EFFECTIVE, Method.RANDOM),
        (Metric.AVG_DISTANCE,),
        "method",
    )


def _network_comparison(options: ReproduceOptions, metrics: Tuple[Metric, ...]) -> pd.DataFrame:
    n = options.node_count
    sources = {"ws": _ws(n), "ba": _ba(n), "er": _er(n)}
    frames = [
        _profile_rows(spec, options, (Method.EFFECTIVE,), metrics, "network_kind", kind)
        for kind, spec in sources.items()
    ]
    return pd.concat(frames, ignore_index=True)


def _describe_fit(name: str, fit: FitResult) -> str:
    variable = "ln|V|" if fit.transform == "ln" else "ln ln|V|"
    return (
        f"{name}: avg_distance = {fit.slope:.4f} * {variable} + {fit.intercept:.4f} "
        f"(R^2 = {fit.r_squared:.4f})"
    )


# ----------------------------------------------------------------------
# Figure recipes
# ----------------------------------------------------------------------


@register_figure("s1")
def scaling_by_size(options: ReproduceOptions) -> Tuple[pd.DataFrame, List[str]]:
    """Average distance of BA and WS networks across sizes, with scaling fits."""
    rows = [
        (kind, n, seed)
        for kind in ("ba", "ws")
        for n in options.size_list
        for seed in options.seed_list
    ]
    specs = [(_ba(n) if kind == "ba" else _ws(n)).with_seed(seed) for kind, n, seed in rows]
    distances = _distances(specs, options.scheduler)
    frame = pd.DataFrame(rows, columns=["network_kind", "n", "seed"])
    frame["avg_distance"] = distances

    notes = []
    ws = frame[frame["network_kind"] == "ws"]
    ba = frame[frame["network_kind"] == "ba"]
    try:
        notes.append(_describe_fit("WS", fit_log(ws["n"].tolist(), ws["avg_distance"].tolist())))
        notes.append(_describe_fit("BA", fit_loglog(ba["n"].tolist(), ba["avg_distance"].tolist())))
    except DegenerateFitError as exc:
        logger.warning(f"Skipping scaling fits: {exc}")
        notes.append(f"scaling fits skipped: {exc}")
    return frame, notes


@register_figure("s2")
def ultra_small_world(options: ReproduceOptions) -> Tuple[pd.DataFrame, List[str]]:
    """Per-seed average distance gap between WS and BA networks of equal size."""
    rows = [(n, seed) for n in options.size_list for seed in options.seed_list]
    ba = _distances([_ba(n).with_seed(seed) for n, seed in rows], options.scheduler)
    ws = _distances([_ws(n).with_seed(seed) for n, seed in rows], options.scheduler)
    frame = pd.DataFrame(rows, columns=["n", "seed"])
    frame["ba_avg_distance"] = ba
    frame["ws_avg_distance"] = ws
    frame["gap"] = np.asarray(ws) - np.asarray(ba)
    return frame, []


@register_figure("s4")
def compression_scale_free(options: ReproduceOptions) -> Tuple[pd.DataFrame, List[str]]:
    return _method_comparison(_ba(options.node_count), options), [f"network: BA(n, m={DEGREE})"]


@register_figure("s5")
def compression_small_world(options: ReproduceOptions) -> Tuple[pd.DataFrame, List[str]]:
    return _method_comparison(_ws(options.node_count), options), [
        f"network: WS(n, k={DEGREE}, p={WS_REWIRING})"
    ]


@register_figure("s6")
def compression_multi_population(options: ReproduceOptions) -> Tuple[pd.DataFrame, List[str]]:
    spec = _multipop(options.node_count)
    return _method_comparison(spec, options), [
        f"network: {POPULATIONS} WS modules of {spec.module_size} nodes, {INTER_EDGES} edges between neighbours"
    ]


@register_figure("s7")
def compression_real_network(options: ReproduceOptions) -> Tuple[pd.DataFrame, List[str]]:
    """Both methods on the largest component of a user-supplied edge list."""
    if options.data is None:
        raise MissingDatasetError("figure s7 needs an edge list passed with --data")
    graph, _ = load_edge_list(options.data)
    component, _ = largest_component(graph)
    frame = _method_comparison(component, options)
    return frame, [
        f"network: largest component of {options.data.name}: "
        f"{component.node_count} nodes, {component.edge_count} edges"
    ]


@register_figure("s8")
def compression_by_network(options: ReproduceOptions) -> Tuple[pd.DataFrame, List[str]]:
    frame = _network_comparison(options, (Metric.AVG_DISTANCE,))
    return frame, [f"ER edge probability {DEGREE}/(n-1)"]


@register_figure("s10")
def clustering_and_fiedler(options: ReproduceOptions) -> Tuple[pd.DataFrame, List[str]]:
    frame = _network_comparison(options, (Metric.CLUSTERING, Metric.FIEDLER))
    return frame, [f"ER edge probability {DEGREE}/(n-1)"]


# ----------------------------------------------------------------------
# Driver
# ----------------------------------------------------------------------


def reproduce(options: ReproduceOptions, out_dir: PathLike) -> List[Path]:
    """Run one figure recipe and write ``<figure>.csv`` plus a ``README.md``.

    Raises:
        InvalidConfigError: unknown figure name
        MissingDatasetError: the recipe needs ``data`` and none was given
    """
    recipe = FIGURES.get(options.figure)
    if recipe is None:
        raise InvalidConfigError(
            f"unknown figure {options.figure!r}, choose from {', '.join(sorted(FIGURES))}"
        )
    logger.info(f"Reproducing figure {options.figure} at {options.scale.value} scale")
    frame, notes = recipe(options)

    target = Path(out_dir)
    csv_path = write_table_csv(frame, target / f"{options.figure}.csv")
    lines = [f"# Figure {options.figure}", "", f"Data: `{csv_path.name}`", ""]
    lines += [f"- {note}" for note in options.substitutions() + notes]
    if options.figure not in ("s1", "s2"):
        lines.append(f"- evolution fractions: {', '.join(f'{f:g}' for f in options.fraction_list)}")
    else:
        lines.append(f"- sizes: {', '.join(str(n) for n in options.size_list)}")
    readme = atomic_write_text(target / "README.md", "\n".join(lines) + "\n")
    return [csv_path, readme]
