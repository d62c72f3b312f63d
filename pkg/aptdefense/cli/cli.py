import sys

import click
from dotenv import load_dotenv
from wasabi import msg

from aptdefense.cli.ConfigManager import DEFAULT_CONFIG, ConfigManager
from aptdefense.cli.util import (
    all_converged,
    comparison_curves_frame,
    comparison_frame,
    curves_frame,
    parse_points,
    solution_frame,
    summary_frame,
    sweep_frame,
    write_table,
)
from aptdefense.components.errors import input_errors
from aptdefense.components.experiments.sweep import (
    ComparisonTable,
    SweepSpec,
    default_grid,
)
from aptdefense.components.network.edgelist import dump_edge_list
from aptdefense.components.network.interface import NetworkSpec
from aptdefense.defense_manager import DefenseManager

load_dotenv()

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_CONVERGED = 2

config_option = click.option(
    "--config",
    "config_path",
    envvar="APTDEFENSE_CONFIG",
    default=DEFAULT_CONFIG,
    show_default=True,
    help="Run configuration (key = value)",
)
output_option = click.option(
    "--output",
    envvar="APTDEFENSE_OUTPUT",
    default=None,
    help="Output directory, overrides output_dir of the config",
)


def fail(error: Exception) -> None:
    msg.fail(str(error))
    sys.exit(EXIT_INPUT)


def load_run_config(config_path: str):
    return ConfigManager(config_path, create=False).get_config()


def write_comparison(table: ComparisonTable, output: str) -> int:
    path = write_table(comparison_frame(table), output, "compare.csv")
    write_table(comparison_curves_frame(table), output, "compare_curves.csv")
    msg.good(f"Wrote {path}")
    return EXIT_OK if table.row("optimal").converged else EXIT_NOT_CONVERGED


@click.group()
def cli():
    """Main command group for aptdefense."""
    pass


@cli.command()
@click.option(
    "--path",
    envvar="APTDEFENSE_CONFIG",
    default=DEFAULT_CONFIG,
    show_default=True,
    help="Config file to create or check",
)
def config(path):
    """
    Write the default config, or load and check an existing one.
    """
    try:
        manager = ConfigManager(path)
    except input_errors() as e:
        fail(e)
    click.echo(manager.get_config().to_text(), nl=False)


@cli.command()
@click.option("--model", default="scale-free", help="Network model")
@click.option("--n", default=100, help="Number of nodes")
@click.option("--m", default=2, help="Edges per new node (scale-free)")
@click.option("--gamma", default=3.0, help="Power-law exponent (scale-free-gamma)")
@click.option("--k", default=4, help="Ring degree (small-world)")
@click.option("--p", default=0.1, help="Rewiring probability (small-world)")
@click.option("--path", default="", help="Edge-list file (edge-list)")
@click.option("--remap", is_flag=True, help="Compact sparse node ids (edge-list)")
@click.option("--seed", default=42, help="Root seed")
@click.option("--out", default="network.txt", show_default=True, help="Edge-list output file")
def generate(model, n, m, gamma, k, p, path, remap, seed, out):
    """
    Generate a network and write it as an edge list.
    """
    try:
        spec = NetworkSpec(
            model=model, n=n, m=m, gamma=gamma, k=k, p=p, path=path, remap=remap
        )
        network = DefenseManager().generate(spec, seed)
    except input_errors() as e:
        fail(e)

    with open(out, "w", encoding="utf-8") as file:
        file.write(dump_edge_list(network))
    msg.good(f"Wrote {out}: {network.n} nodes, {network.edge_count} directed edges")


@cli.command()
@config_option
@output_option
def solve(config_path, output):
    """
    Solve the optimal defense problem of a config.
    """
    try:
        run_config = load_run_config(config_path)
        instance = run_config.to_instance()
        _, report = DefenseManager().solve(instance)
    except input_errors() as e:
        fail(e)

    output = output or run_config.output_dir
    write_table(solution_frame(report, instance.params), output, "solution.csv")
    write_table(curves_frame(report, instance.params), output, "curves.csv")
    write_table(summary_frame(report), output, "summary.csv")
    msg.good(f"Wrote solution, curves and summary to {output}")
    sys.exit(EXIT_OK if report.converged else EXIT_NOT_CONVERGED)


@cli.command()
@config_option
@output_option
def compare(config_path, output):
    """
    Compare the optimal strategy against the static strategies.
    """
    try:
        run_config = load_run_config(config_path)
        table = DefenseManager().compare(run_config.to_instance())
    except input_errors() as e:
        fail(e)

    sys.exit(write_comparison(table, output or run_config.output_dir))


@cli.command()
@config_option
@output_option
@click.option("--scenario", required=True, help="Sweep scenario")
@click.option(
    "--points",
    default=None,
    help="Comma separated grid, lo:hi pairs for bounds-x and bounds-y",
)
@click.option("--replicates", default=None, type=int, help="Replicates per point")
@click.option("--workers", default=None, type=int, help="Worker processes")
def sweep(config_path, output, scenario, points, replicates, workers):
    """
    Run a parameter sweep and write sweep.csv.
    """
    try:
        run_config = load_run_config(config_path)
        grid = default_grid(scenario) if points is None else parse_points(points)
        spec = SweepSpec(
            scenario=scenario,
            grid=grid,
            base=run_config.to_instance(),
            replicates=replicates or run_config.replicates,
            workers=workers or run_config.workers,
        )
        result = DefenseManager().sweep(spec)
    except input_errors() as e:
        fail(e)

    output = output or run_config.output_dir
    if isinstance(result, ComparisonTable):
        sys.exit(write_comparison(result, output))

    path = write_table(sweep_frame(result, scenario), output, "sweep.csv")
    msg.good(f"Wrote {path} ({len(result)} rows)")
    sys.exit(EXIT_OK if all_converged(result) else EXIT_NOT_CONVERGED)
