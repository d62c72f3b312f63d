from wasabi import msg

from aptdefense.components.component import DefenseComponent
from aptdefense.components.experiments.manager import ExperimentManager
from aptdefense.components.experiments.sweep import (
    ComparisonTable,
    ProblemInstance,
    SweepRow,
    SweepSpec,
)
from aptdefense.components.network.interface import NetworkSpec
from aptdefense.components.network.manager import NetworkManager
from aptdefense.components.network.network import Network
from aptdefense.components.solver.fbsm import ForwardBackwardSweep, SolveReport
from aptdefense.components.util import GENERATOR_STREAM, stream_seed


class DefenseManager:
    """Manages all aptdefense components."""

    def __init__(self) -> None:
        self.network_manager = NetworkManager()
        self.solver = ForwardBackwardSweep()
        self.experiment_manager = ExperimentManager()
        self.installed_libraries = {}

        self.verify_installed_libraries()

    def components(self) -> list[DefenseComponent]:
        return (
            list(self.network_manager.get_generators().values())
            + [self.solver, self.solver.integrator]
            + list(self.experiment_manager.get_experiments().values())
        )

    def verify_installed_libraries(self) -> None:
        for component in self.components():
            available, message = component.available()
            self.installed_libraries[component.name] = available
            if not available:
                msg.warn(f"{component.name} unavailable: {message}")

    def generate(self, spec: NetworkSpec, seed: int) -> Network:
        """Build a network on the generator stream of a root seed
        @parameter: spec : NetworkSpec - Network source
        @parameter: seed : int - Root seed of the run
        @returns Network - Same network a run config with this seed builds.
        """
        return self.network_manager.build(spec, stream_seed(seed, GENERATOR_STREAM))

    def build_network(self, instance: ProblemInstance) -> Network:
        return self.network_manager.build(instance.network, instance.network_seed)

    def solve(self, instance: ProblemInstance) -> tuple[Network, SolveReport]:
        net = self.build_network(instance)
        msg.info(f"Solving on {net!r}")
        report = self.solver.solve(
            net,
            instance.attack_strategy(net.n),
            instance.params,
            instance.bounds,
            instance.initial_vector(net.n),
            instance.solver,
        )
        return net, report

    def compare(self, instance: ProblemInstance) -> ComparisonTable:
        return self.experiment_manager.run(
            SweepSpec(scenario="baseline-compare", grid=[()], base=instance)
        )

    def sweep(self, spec: SweepSpec) -> list[SweepRow] | ComparisonTable:
        msg.info(f"Running {spec.scenario} over {len(spec.grid)} points")
        return self.experiment_manager.run(spec)
