import numpy as np
from tqdm import tqdm
from tqdm.contrib.concurrent import process_map
from wasabi import msg

from aptdefense.components.errors import InvalidParameterError, input_errors
from aptdefense.components.experiments.interface import Experiment
from aptdefense.components.experiments.sweep import (
    TOPOLOGY_SCENARIOS,
    SweepRow,
    SweepSpec,
)
from aptdefense.components.network.interface import NetworkSpec
from aptdefense.components.network.manager import NetworkManager
from aptdefense.components.solver.fbsm import solve
from aptdefense.components.util import REPLICATE_STREAM, stream_seed


def replicate_seed(seed: int, value: float, replicate: int) -> int:
    """Seed of one replicate, keyed by the swept value so reordering the grid keeps it."""
    return stream_seed(seed, REPLICATE_STREAM, int(round(value * 1_000_000)), replicate)


def point_spec(base: NetworkSpec, scenario: str, value: float) -> NetworkSpec:
    if scenario == "scale-free-gamma":
        update = {"model": "scale-free-gamma", "gamma": value}
    else:
        update = {"model": "small-world", "p": value}
    return NetworkSpec(**{**base.model_dump(), **update})


def solve_topology_point(task: tuple) -> SweepRow:
    """Average OL*, OC*, OJ* over the replicates of one swept value.

    A replicate whose network cannot be generated is skipped; the row reports
    the effective replicate count.
    """
    instance, scenario, value, replicates = task
    manager = NetworkManager()
    losses, costs, totals, converged, seeds, failures = [], [], [], [], [], []

    for replicate in range(replicates):
        seed = replicate_seed(instance.seed, value, replicate)
        try:
            net = manager.build(point_spec(instance.network, scenario, value), seed)
            atk = instance.attack_strategy(net.n)
            C0 = instance.initial_vector(net.n)
        except input_errors() as e:
            failures.append(f"replicate {replicate}: {e}")
            continue
        report = solve(net, atk, instance.params, instance.bounds, C0, instance.solver)
        losses.append(report.loss_star)
        costs.append(report.cost_star)
        totals.append(report.j_star)
        converged.append(report.converged)
        seeds.append(seed)

    if not seeds:
        return SweepRow(point=(value,), skipped="; ".join(failures))
    return SweepRow(
        point=(value,),
        ol=float(np.mean(losses)),
        oc=float(np.mean(costs)),
        oj=float(np.mean(totals)),
        converged_fraction=float(np.mean(converged)),
        replicates=len(seeds),
        seeds=seeds,
        skipped="; ".join(failures),
    )


def run_topology_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Sweep the power-law exponent or the rewiring probability over fresh networks
    @parameter spec : SweepSpec - scale-free-gamma or small-world-p scenario
    @returns list[SweepRow] - One row per grid value, in grid order.
    """
    if spec.scenario not in TOPOLOGY_SCENARIOS:
        raise InvalidParameterError(f"{spec.scenario} is not a topology sweep")
    tasks = [
        (spec.base, spec.scenario, float(point[0]), spec.replicates) for point in spec.grid
    ]

    if spec.workers > 1:
        rows = process_map(
            solve_topology_point,
            tasks,
            max_workers=spec.workers,
            chunksize=1,
            desc=f"Sweeping {spec.scenario}",
        )
    else:
        rows = [
            solve_topology_point(task)
            for task in tqdm(tasks, desc=f"Sweeping {spec.scenario}", total=len(tasks))
        ]

    for row in rows:
        if row.replicates < spec.replicates:
            msg.warn(
                f"Point {row.point[0]:g}: {row.replicates} of {spec.replicates} replicates usable"
            )
    return rows


class TopologySweep(Experiment):
    def __init__(self):
        super().__init__()
        self.name = "TopologySweep"
        self.requires_library = ["networkx", "numpy", "scipy", "tqdm"]
        self.description = "Replicated sweeps over the scale-free exponent or the small-world rewiring probability."
        self.scenarios = list(TOPOLOGY_SCENARIOS)

    def run(self, spec: SweepSpec) -> list[SweepRow]:
        return run_topology_sweep(spec)
