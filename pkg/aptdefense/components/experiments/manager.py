from aptdefense.components.errors import InvalidParameterError
from aptdefense.components.experiments.baseline import BaselineComparison
from aptdefense.components.experiments.bounds import BoundSweep
from aptdefense.components.experiments.interface import Experiment
from aptdefense.components.experiments.sweep import ComparisonTable, SweepRow, SweepSpec
from aptdefense.components.experiments.topology import TopologySweep


class ExperimentManager:
    def __init__(self):
        self.experiments: dict[str, Experiment] = {
            "BaselineComparison": BaselineComparison(),
            "BoundSweep": BoundSweep(),
            "TopologySweep": TopologySweep(),
        }

    def experiment_for(self, scenario: str) -> Experiment:
        for experiment in self.experiments.values():
            if scenario in experiment.scenarios:
                return experiment
        raise InvalidParameterError(f"No experiment runs scenario {scenario}")

    def run(self, spec: SweepSpec) -> list[SweepRow] | ComparisonTable:
        experiment = self.experiment_for(spec.scenario)
        available, message = experiment.available()
        if not available:
            raise InvalidParameterError(f"{experiment.name}: {message}")
        return experiment.run(spec)

    def get_experiments(self) -> dict[str, Experiment]:
        return self.experiments
