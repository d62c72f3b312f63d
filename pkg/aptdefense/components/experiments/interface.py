from aptdefense.components.component import DefenseComponent
from aptdefense.components.experiments.sweep import ComparisonTable, SweepRow, SweepSpec


class Experiment(DefenseComponent):
    """
    Interface for experiments run on top of the solver.
    """

    def __init__(self):
        super().__init__()
        self.scenarios: list[str] = []

    def run(self, spec: SweepSpec) -> list[SweepRow] | ComparisonTable:
        """Run the experiment for one sweep spec
        @parameter: spec : SweepSpec - Scenario, grid and base instance
        @returns list[SweepRow] | ComparisonTable - Rows in grid order, or a comparison table.
        """
        raise NotImplementedError("run method must be implemented by a subclass.")
