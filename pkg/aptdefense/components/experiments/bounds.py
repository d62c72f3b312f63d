import math

from pydantic import ValidationError as RecordValidationError
from tqdm import tqdm
from tqdm.contrib.concurrent import process_map
from wasabi import msg

from aptdefense.components.control.control import Bounds
from aptdefense.components.errors import InvalidParameterError
from aptdefense.components.experiments.interface import Experiment
from aptdefense.components.experiments.sweep import (
    BOUND_SCENARIOS,
    SweepRow,
    SweepSpec,
)
from aptdefense.components.network.network import Network
from aptdefense.components.solver.fbsm import solve


def solve_bound_point(task: tuple) -> SweepRow:
    """Solve one (lo, hi) cell of a bound sweep; invalid cells are skipped with a reason."""
    instance, network, scenario, point = task
    lo, hi = point
    prefix = "x" if scenario == "bounds-x" else "y"
    try:
        bounds = Bounds(
            **{**instance.bounds.model_dump(), f"{prefix}_lo": lo, f"{prefix}_hi": hi}
        )
    except RecordValidationError:
        return SweepRow(point=point, skipped=f"{prefix}_lo {lo:g} > {prefix}_hi {hi:g}")

    report = solve(
        network,
        instance.attack_strategy(network.n),
        instance.params,
        bounds,
        instance.initial_vector(network.n),
        instance.solver,
    )
    return SweepRow(
        point=point,
        ol=report.loss_star,
        oc=report.cost_star,
        oj=report.j_star,
        converged_fraction=1.0 if report.converged else 0.0,
        replicates=1,
        seeds=[instance.network_seed],
    )


def run_bound_sweep(spec: SweepSpec, network: Network = None) -> list[SweepRow]:
    """Solve every (lo, hi) point of a bounds-x or bounds-y sweep on one fixed network
    @parameter spec : SweepSpec - Bound scenario with (lo, hi) grid points
    @parameter network : Network - Prebuilt network, built from the base instance when omitted
    @returns list[SweepRow] - One row per grid point, in grid order.
    """
    if spec.scenario not in BOUND_SCENARIOS:
        raise InvalidParameterError(f"{spec.scenario} is not a bound sweep")
    net = spec.base.build_network() if network is None else network
    tasks = [(spec.base, net, spec.scenario, tuple(point)) for point in spec.grid]

    if spec.workers > 1:
        rows = process_map(
            solve_bound_point,
            tasks,
            max_workers=spec.workers,
            chunksize=1,
            desc=f"Sweeping {spec.scenario}",
        )
    else:
        rows = [
            solve_bound_point(task)
            for task in tqdm(tasks, desc=f"Sweeping {spec.scenario}", total=len(tasks))
        ]

    skipped = sum(1 for row in rows if row.skipped)
    if skipped:
        msg.warn(f"Skipped {skipped} of {len(rows)} points with inverted bounds")
    solved = [row for row in rows if not math.isnan(row.oj)]
    msg.good(f"Solved {len(solved)} bound points for {spec.scenario}")
    return rows


class BoundSweep(Experiment):
    def __init__(self):
        super().__init__()
        self.name = "BoundSweep"
        self.requires_library = ["numpy", "scipy", "tqdm"]
        self.description = "Optimal objective over a grid of lower/upper bound pairs."
        self.scenarios = list(BOUND_SCENARIOS)

    def run(self, spec: SweepSpec) -> list[SweepRow]:
        return run_bound_sweep(spec)
