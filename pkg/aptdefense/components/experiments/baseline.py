from wasabi import msg

from aptdefense.components.control.control import static_baselines
from aptdefense.components.dynamics.euler import forward_integrate
from aptdefense.components.experiments.interface import Experiment
from aptdefense.components.experiments.sweep import (
    BaselineRow,
    ComparisonTable,
    ProblemInstance,
    SweepSpec,
)
from aptdefense.components.metrics.objective import curves, objective
from aptdefense.components.network.network import Network
from aptdefense.components.solver.fbsm import solve


def run_baseline_compare(
    instance: ProblemInstance, network: Network = None
) -> ComparisonTable:
    """Compare the optimal strategy against the static lower, mid and upper strategies
    @parameter instance : ProblemInstance - Problem to solve
    @parameter network : Network - Prebuilt network, built from the instance when omitted
    @returns ComparisonTable - Rows sorted by J with the CE/SC curves of every strategy.
    """
    net = instance.build_network() if network is None else network
    atk = instance.attack_strategy(net.n)
    C0 = instance.initial_vector(net.n)
    w = net.weights.astype(float)

    report = solve(net, atk, instance.params, instance.bounds, C0, instance.solver)
    rows = [
        BaselineRow(
            label="optimal",
            j=report.j_star,
            loss=report.loss_star,
            cost=report.cost_star,
            converged=report.converged,
            iterations=report.iterations,
        )
    ]
    strategy_curves = {"optimal": report.curves}
    if not report.converged:
        msg.warn("Optimal row is flagged: the sweep did not converge")

    for label, u in static_baselines(instance.bounds, instance.params, net.n).items():
        traj = forward_integrate(C0, u, net, atk, instance.params)
        breakdown = objective(traj, u, w, instance.params)
        rows.append(
            BaselineRow(
                label=label, j=breakdown.j, loss=breakdown.loss, cost=breakdown.cost
            )
        )
        strategy_curves[label] = curves(traj, u, w, instance.params)

    table = ComparisonTable(rows, strategy_curves, instance.params.times)
    msg.info(f"Best strategy: {table.rows[0].label} (J = {table.rows[0].j:.6g})")
    return table


class BaselineComparison(Experiment):
    def __init__(self):
        super().__init__()
        self.name = "BaselineComparison"
        self.requires_library = ["numpy", "scipy"]
        self.description = "Optimal strategy against the three static strategies on one instance."
        self.scenarios = ["baseline-compare"]

    def run(self, spec: SweepSpec) -> ComparisonTable:
        return run_baseline_compare(spec.base)
