import io
import os

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from wasabi import msg

from aptdefense.components.control.control import Bounds
from aptdefense.components.dynamics.model import ModelParams
from aptdefense.components.errors import ValidationError
from aptdefense.components.experiments.sweep import ProblemInstance
from aptdefense.components.network.interface import NetworkModel, NetworkSpec
from aptdefense.components.solver.fbsm import SolverConfig

DEFAULT_CONFIG = "aptdefense.cfg"


class RunConfig(BaseModel):
    """Flat run configuration; defaults reproduce the 100-node scale-free example."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    network: NetworkModel = "scale-free"
    network_path: str = ""
    network_remap: bool = False
    n: int = 100
    m: int = 2
    gamma: float = 3.0
    k: int = 4
    p: float = 0.1
    seed: int = 42
    beta: float = 0.001
    horizon: float = 20.0
    steps: int = 2000
    x_lo: float = 0.1
    x_hi: float = 0.7
    y_lo: float = 0.1
    y_hi: float = 0.7
    attack: str = "0.1"
    initial_state: str = "0.1"
    relaxation: float = 0.5
    shrink: float = 0.5
    grow: float = 1.2
    tol: float = 1e-4
    max_iters: int = 500
    replicates: int = 5
    workers: int = 1
    output_dir: str = "output"

    @field_validator("attack", "initial_state", mode="before")
    @classmethod
    def as_text(cls, value):
        return str(value)

    @model_validator(mode="after")
    def check_components(self):
        # Builds every component record, which runs their checks
        self.to_instance()
        if self.network == "edge-list" and not self.network_path:
            raise ValueError("network = edge-list needs a network_path")
        if self.replicates < 1 or self.workers < 1:
            raise ValueError("replicates and workers must be at least 1")
        return self

    def network_spec(self) -> NetworkSpec:
        return NetworkSpec(
            model=self.network,
            n=self.n,
            m=self.m,
            gamma=self.gamma,
            k=self.k,
            p=self.p,
            path=self.network_path,
            remap=self.network_remap,
        )

    def to_instance(self) -> ProblemInstance:
        return ProblemInstance(
            network=self.network_spec(),
            seed=self.seed,
            attack=self.attack,
            initial_state=self.initial_state,
            params=ModelParams(beta=self.beta, horizon=self.horizon, steps=self.steps),
            bounds=Bounds(x_lo=self.x_lo, x_hi=self.x_hi, y_lo=self.y_lo, y_hi=self.y_hi),
            solver=SolverConfig(
                relaxation=self.relaxation,
                shrink=self.shrink,
                grow=self.grow,
                tol=self.tol,
                max_iters=self.max_iters,
            ),
        )

    def to_text(self) -> str:
        """Canonical `key = value` form in field order."""
        lines = ["# aptdefense run configuration"]
        for key, value in self.model_dump().items():
            if isinstance(value, bool):
                value = str(value).lower()
            lines.append(f"{key} = {value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str):
        values = dotenv_values(stream=io.StringIO(text), interpolate=False)
        missing = [key for key, value in values.items() if value is None]
        if missing:
            raise ValidationError(f"Config keys without a value: {', '.join(missing)}")
        return cls(**values)


class ConfigManager:
    def __init__(self, filename: str = None, create: bool = True):
        self.filename = filename or os.environ.get("APTDEFENSE_CONFIG", DEFAULT_CONFIG)
        self.config: RunConfig = None
        # Load the config if exists or create one if not
        if os.path.exists(self.filename):
            self.load_config()
        elif create:
            self.default_config()
            self.save_config()
        else:
            raise ValidationError(f"Config file {self.filename} not found")

    def default_config(self):
        """Create a default config."""
        msg.info("New Config initialized")
        self.config = RunConfig()

    def load_config(self):
        """Load config from file."""
        with open(self.filename, encoding="utf-8") as file:
            self.config = RunConfig.from_text(file.read())
        msg.good(f"Config loaded from {self.filename}")

    def save_config(self):
        """Save config to file."""
        with open(self.filename, "w", encoding="utf-8") as file:
            file.write(self.config.to_text())
        msg.good(f"Saved Config to {self.filename}")

    def get_config(self) -> RunConfig:
        return self.config
