import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.stats import spearmanr

from aptdefense.components.control.control import Bounds
from aptdefense.components.dynamics.model import AttackStrategy, ModelParams
from aptdefense.components.metrics.objective import DiagnosticCurves
from aptdefense.components.network.interface import NetworkSpec
from aptdefense.components.network.manager import NetworkManager
from aptdefense.components.network.network import Network
from aptdefense.components.solver.fbsm import SolverConfig
from aptdefense.components.util import GENERATOR_STREAM, resolve_vector, stream_seed

Scenario = Literal[
    "bounds-x", "bounds-y", "scale-free-gamma", "small-world-p", "baseline-compare"
]
BOUND_SCENARIOS = ("bounds-x", "bounds-y")
TOPOLOGY_SCENARIOS = ("scale-free-gamma", "small-world-p")

# Column names of the swept parameter per scenario
POINT_COLUMNS = {
    "bounds-x": ["x_lo", "x_hi"],
    "bounds-y": ["y_lo", "y_hi"],
    "scale-free-gamma": ["gamma"],
    "small-world-p": ["p"],
    "baseline-compare": [],
}


class ProblemInstance(BaseModel):
    """A complete problem: network source, attack, initial state, model, bounds and solver settings."""

    model_config = ConfigDict(frozen=True)

    network: NetworkSpec = NetworkSpec()
    seed: int = 42
    attack: float | str = 0.1
    initial_state: float | str = 0.1
    params: ModelParams = ModelParams()
    bounds: Bounds = Bounds()
    solver: SolverConfig = SolverConfig()

    @property
    def network_seed(self) -> int:
        return stream_seed(self.seed, GENERATOR_STREAM)

    def build_network(self, manager: NetworkManager = None) -> Network:
        manager = NetworkManager() if manager is None else manager
        return manager.build(self.network, self.network_seed)

    def attack_strategy(self, n: int) -> AttackStrategy:
        return AttackStrategy(resolve_vector(self.attack, n, "attack"))

    def initial_vector(self, n: int) -> np.ndarray:
        return resolve_vector(self.initial_state, n, "initial_state")


class SweepSpec(BaseModel):
    """A parameter sweep over one scenario of a base instance."""

    model_config = ConfigDict(frozen=True)

    scenario: Scenario
    grid: list[tuple[float, ...]] = Field(min_length=1)
    base: ProblemInstance = ProblemInstance()
    replicates: int = Field(default=5, ge=1)
    workers: int = Field(default=1, ge=1)

    @field_validator("grid", mode="before")
    @classmethod
    def wrap_scalars(cls, grid):
        return [point if isinstance(point, (tuple, list)) else (point,) for point in grid]

    @model_validator(mode="after")
    def check_points(self):
        width = 2 if self.scenario in BOUND_SCENARIOS else 1
        if self.scenario == "baseline-compare":
            return self
        for point in self.grid:
            if len(point) != width:
                raise ValueError(
                    f"Scenario {self.scenario} needs points with {width} value(s), got {point}"
                )
        return self


class SweepRow(BaseModel):
    """Means of OL*, OC*, OJ* over the replicates of one grid point."""

    model_config = ConfigDict(frozen=True)

    point: tuple[float, ...]
    ol: float = math.nan
    oc: float = math.nan
    oj: float = math.nan
    converged_fraction: float = 0.0
    replicates: int = 0
    seeds: list[int] = []
    skipped: str = ""


class BaselineRow(BaseModel):
    """Objective breakdown of one strategy in a baseline comparison."""

    model_config = ConfigDict(frozen=True)

    label: str
    j: float
    loss: float
    cost: float
    converged: bool = True
    iterations: int = 0


class ComparisonTable:
    """Rows sorted by J ascending, with the CE/SC curves of every strategy."""

    def __init__(
        self,
        rows: list[BaselineRow],
        curves: dict[str, DiagnosticCurves],
        times: np.ndarray,
    ):
        self._rows = sorted(rows, key=lambda row: row.j)
        self._curves = curves
        self._times = times

    @property
    def rows(self) -> list[BaselineRow]:
        return self._rows

    @property
    def curves(self) -> dict[str, DiagnosticCurves]:
        return self._curves

    @property
    def times(self) -> np.ndarray:
        return self._times

    def row(self, label: str) -> BaselineRow:
        return next(row for row in self._rows if row.label == label)


def default_grid(scenario: str) -> list[tuple[float, ...]]:
    """Sweep axes of the bound surfaces and topology examples."""
    if scenario in BOUND_SCENARIOS:
        levels = [round(0.1 * i, 10) for i in range(1, 8)]
        return [(lo, hi) for lo in levels for hi in levels]
    if scenario == "scale-free-gamma":
        return [(round(2.7 + 0.1 * i, 10),) for i in range(1, 8)]
    if scenario == "small-world-p":
        return [(round(0.1 * i, 10),) for i in range(1, 6)]
    return [()]


def rank_trend(rows: list[SweepRow], field: str, axis: int = 0) -> float:
    """Spearman rank correlation of a row metric against one coordinate of the swept point
    @parameter rows : list[SweepRow] - Sweep result
    @parameter field : str - One of ol, oc, oj
    @parameter axis : int - Coordinate of the point to correlate against
    @returns float - Correlation in [-1, 1], nan with fewer than two valid rows.
    """
    pairs = [
        (row.point[axis], getattr(row, field))
        for row in rows
        if not math.isnan(getattr(row, field))
    ]
    if len(pairs) < 2:
        return math.nan
    points, values = zip(*pairs)
    return float(spearmanr(points, values).statistic)
