"""``netcompress`` command line interface."""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import click
from pydantic import ValidationError

from ._version import __version__
from .config import ExperimentConfig, load_config_file
from .errors import InvalidConfigError, NetCompressError
from .evolution import EvolutionConfig, NodeConstraint, compression_profile, get_strategy, run_chain
from .experiments import FIGURES, ReproduceOptions, reproduce
from .generators import GeneratorSpec
from .graph import Graph, average_distance, clustering_coefficient, largest_component
from .io import (
    RunSummary,
    load_edge_list,
    profile_frame,
    read_node_attributes,
    write_edge_list,
    write_summary_json,
    write_table_csv,
    write_trajectory_csv,
)
from .types import GeneratorKind, Metric, Scale

__all__ = ["cli", "main", "run"]

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)8s] %(name)s: %(message)s"
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class CommaList(click.ParamType):
    """Comma-separated values converted item by item."""

    name = "list"

    def __init__(self, item: Callable[[str], Any]) -> None:
        self.item = item

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> List[Any]:
        if isinstance(value, (list, tuple)):
            return list(value)
        try:
            return [self.item(tok.strip()) for tok in str(value).split(",") if tok.strip()]
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of {self.item.__name__} values", param, ctx)


def _load_config(ctx: click.Context, param: click.Parameter, value: Optional[str]) -> None:
    """Load a flat config file into the command's defaults; flags still win."""
    if value is None:
        return
    values = load_config_file(value)
    # keys may name the flag (``in``) or the parameter (``input_path``)
    known: Dict[str, str] = {}
    for p in ctx.command.params:
        if p.name is None:
            continue
        known[p.name] = p.name
        for opt in p.opts:
            known[opt.lstrip("-").replace("-", "_")] = p.name
    unknown = sorted(set(values) - set(known))
    if unknown:
        logger.warning(f"{value}: ignoring unknown settings {', '.join(unknown)}")
    defaults = {known[k]: v for k, v in values.items() if k in known}
    ctx.default_map = {**(ctx.default_map or {}), **defaults}


config_option = click.option(
    "--config",
    type=click.Path(exists=True, dir_okay=False),
    callback=_load_config,
    is_eager=True,
    expose_value=False,
    help="Flat 'key = value' file providing defaults for the other options.",
)

METRIC_NAMES = [m.value for m in Metric]


def _metrics(names: Sequence[str]) -> Tuple[Metric, ...]:
    unknown = [name for name in names if name not in METRIC_NAMES]
    if unknown:
        raise click.BadParameter(f"unknown metrics {', '.join(unknown)}; choose from {', '.join(METRIC_NAMES)}")
    return tuple(Metric(name) for name in names)


def generator_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Options shared by every command that samples a network."""
    options = [
        click.option("--kind", type=click.Choice([k.value for k in GeneratorKind]), help="Network model."),
        click.option("--n", type=int, help="Number of nodes."),
        click.option("--m", type=int, help="BA edges per new node."),
        click.option("--k", type=int, help="WS ring degree (even)."),
        click.option("--p", type=float, help="WS rewiring or ER edge probability."),
        click.option("--mean-degree", type=float, help="ER expected degree, instead of --p."),
        click.option("--modules", type=int, help="Number of multi-population modules."),
        click.option("--module-size", type=int, help="Nodes per module."),
        click.option("--m-inter", type=int, help="Edges between consecutive modules."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _spec(kind: str, seed: int, **params: Any) -> GeneratorSpec:
    return GeneratorSpec.from_options(kind=kind, seed=seed, **params)


def _read_input(path: Path, giant: bool) -> Tuple[Graph, List[str]]:
    graph, labels = load_edge_list(path)
    if giant:
        graph, node_map = largest_component(graph)
        labels = [labels[i] for i in node_map]
        click.echo(f"largest component: {graph.node_count} nodes, {graph.edge_count} edges")
    return graph, labels


def _constraint(path: Optional[Path], graph: Graph, labels: List[str]) -> Optional[NodeConstraint]:
    if path is None:
        return None
    return read_node_attributes(path, graph.node_count, {label: i for i, label in enumerate(labels)})


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="netcompress")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="WARNING",
    show_default=True,
)
def cli(log_level: str) -> None:
    """Topological compression of networks by betweenness-guided rewiring."""
    logging.basicConfig(format=LOG_FORMAT)
    logging.getLogger("netcompress").setLevel(log_level.upper())


@cli.command()
@config_option
@generator_options
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True)
def generate(kind: Optional[str], seed: int, out: Path, **params: Any) -> None:
    """Sample a network and write it as an edge list."""
    if kind is None:
        raise click.UsageError("--kind is required")
    graph = _spec(kind, seed, **params).build()
    write_edge_list(graph, out)
    click.echo(f"nodes: {graph.node_count}")
    click.echo(f"edges: {graph.edge_count}")
    click.echo(f"avg_distance: {average_distance(graph):.6f}")
    click.echo(f"clustering: {clustering_coefficient(graph):.6f}")


@cli.command()
@config_option
@click.option("--in", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--largest-component", is_flag=True, help="Keep only the largest connected component.")
@click.option("--p-rew", type=float, required=True, help="Evolution fraction.")
@click.option("--method", type=click.Choice(["effective", "random", "both"]), default="effective", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--metrics", type=CommaList(str), default="avg_distance,clustering,fiedler", show_default=True)
@click.option("--constraint", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--record-every", type=int, default=1, show_default=True, help="0 records no per-step distances.")
@click.option("--check-bounds", is_flag=True, help="Verify the distance bounds at every step.")
@click.option("--randomize-ties", is_flag=True, help="Break score ties with the seed.")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=Path("."), show_default=True)
def compress(
    input_path: Path,
    largest_component: bool,
    p_rew: float,
    method: str,
    seed: int,
    metrics: List[str],
    constraint: Optional[Path],
    record_every: int,
    check_bounds: bool,
    randomize_ties: bool,
    out: Path,
) -> None:
    """Run one evolution and write its trajectory and summary."""
    experiment = ExperimentConfig.from_options(
        input=input_path,
        method=method,
        fractions=[p_rew],
        seeds=[seed],
        metrics=_metrics(metrics),
        constraint_file=constraint,
        output=out,
        largest_component=largest_component,
    )
    graph, labels = _read_input(input_path, experiment.largest_component)
    node_constraint = _constraint(experiment.constraint_file, graph, labels)
    try:
        config = EvolutionConfig(
            rewiring_fraction=p_rew,
            seed=seed,
            constraint=node_constraint,
            record_metrics_every=record_every,
            check_bounds=check_bounds,
            randomize_ties=randomize_ties,
            metrics=experiment.metrics,
        )
    except ValidationError as exc:
        raise InvalidConfigError(f"invalid evolution config: {exc.errors()[0]['msg']}", exc) from exc

    for chosen in experiment.methods():
        trajectory = run_chain(graph, config, get_strategy(chosen))
        trajectory_path = write_trajectory_csv(trajectory, experiment.output / f"trajectory_{chosen.value}.csv")
        summary = RunSummary.from_trajectory(trajectory)
        write_summary_json(summary, experiment.output / f"summary_{chosen.value}.json")
        click.echo(
            f"{chosen.value}: {summary.steps} steps, avg_distance "
            f"{summary.initial_avg_distance} -> {summary.final_avg_distance} ({trajectory_path})"
        )


@cli.command()
@config_option
@click.option("--in", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--largest-component", is_flag=True)
@generator_options
@click.option("--fractions", type=CommaList(float), required=True, help="Comma-separated P_rew values.")
@click.option("--seeds", type=CommaList(int), default="0", show_default=True)
@click.option("--method", type=click.Choice(["effective", "random", "both"]), default="effective", show_default=True)
@click.option("--metrics", type=CommaList(str), default="avg_distance,clustering,fiedler", show_default=True)
@click.option("--constraint", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--scheduler", type=click.Choice(["threads", "synchronous"]), default="threads", show_default=True)
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=Path("."), show_default=True)
def profile(
    input_path: Optional[Path],
    largest_component: bool,
    kind: Optional[str],
    fractions: List[float],
    seeds: List[int],
    method: str,
    metrics: List[str],
    constraint: Optional[Path],
    scheduler: str,
    out: Path,
    **params: Any,
) -> None:
    """Final metrics over a grid of evolution fractions and seeds."""
    if (input_path is None) == (kind is None):
        raise click.UsageError("give exactly one of --in or --kind")
    source: Any
    if input_path is not None:
        source, labels = _read_input(input_path, largest_component)
        node_constraint = _constraint(constraint, source, labels)
    else:
        assert kind is not None
        source = _spec(kind, seeds[0] if seeds else 0, **params)
        if constraint is not None:
            node_constraint = read_node_attributes(constraint, source.node_count)
        else:
            node_constraint = None
    experiment = ExperimentConfig.from_options(
        input=source if isinstance(source, GeneratorSpec) else input_path,
        method=method,
        fractions=fractions,
        seeds=seeds,
        metrics=_metrics(metrics),
        constraint_file=constraint,
        output=out,
        largest_component=largest_component,
    )
    for chosen in experiment.methods():
        dataset = compression_profile(
            source,
            sorted(experiment.fractions),
            experiment.seeds,
            method=chosen,
            metrics=experiment.metrics,
            constraint=node_constraint,
            scheduler=scheduler,
        )
        path = write_table_csv(profile_frame(dataset), experiment.output / f"profile_{chosen.value}.csv")
        for metric in experiment.metrics:
            means = ", ".join(f"{v:.4f}" for v in dataset[f"mean_{metric.value}"].values)
            click.echo(f"{chosen.value} mean {metric.value}: {means}")
        click.echo(f"wrote {path}")


@cli.command(name="reproduce")
@config_option
@click.option("--figure", type=click.Choice(sorted(FIGURES)), required=True)
@click.option("--scale", type=click.Choice([s.value for s in Scale]), default=Scale.DESK.value, show_default=True)
@click.option("--n", type=int, help="Override the preset network size.")
@click.option("--seeds", type=int, help="Override the preset number of seeds.")
@click.option("--fractions", type=CommaList(float), help="Override the evolution fractions.")
@click.option("--sizes", type=CommaList(int), help="Override the sizes of the scaling figures.")
@click.option("--data", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Edge list for s7.")
@click.option("--scheduler", type=click.Choice(["threads", "synchronous"]), default="threads", show_default=True)
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=Path("."), show_default=True)
def reproduce_command(out: Path, **options: Any) -> None:
    """Regenerate the data of one figure as CSV plus a README."""
    written = reproduce(ReproduceOptions.from_options(**options), out)
    for path in written:
        click.echo(f"wrote {path}")


def _report(exc: NetCompressError) -> None:
    payload: Dict[str, str] = {"error": exc.code, "message": str(exc)}
    click.echo(json.dumps(payload), err=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and map outcomes to exit codes: 0 ok, 1 usage, 2 runtime."""
    try:
        cli.main(args=list(argv) if argv is not None else None, prog_name="netcompress", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except NetCompressError as exc:
        logger.debug("runtime error", exc_info=exc)
        _report(exc)
        return EXIT_RUNTIME
    return 0


def run() -> None:
    sys.exit(main())
