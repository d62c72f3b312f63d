from typing import Literal

from pydantic import BaseModel, ConfigDict

from aptdefense.components.component import DefenseComponent
from aptdefense.components.network.network import Network

NetworkModel = Literal["scale-free", "scale-free-gamma", "small-world", "edge-list"]


class NetworkSpec(BaseModel):
    """Describes a network source: a generator with its parameters or an edge-list file."""

    model_config = ConfigDict(frozen=True)

    model: NetworkModel = "scale-free"
    n: int = 100
    m: int = 2
    gamma: float = 3.0
    k: int = 4
    p: float = 0.1
    path: str = ""
    remap: bool = False


class NetworkGenerator(DefenseComponent):
    """
    Interface for network sources.
    """

    def __init__(self):
        super().__init__()
        self.seeded = True

    def generate(self, spec: NetworkSpec, seed: int) -> Network:
        """Build a network from a spec
        @parameter: spec : NetworkSpec - Source description and generator parameters
        @parameter: seed : int - RNG seed, ignored by unseeded sources
        @returns Network - The generated or loaded network.
        """
        raise NotImplementedError("generate method must be implemented by a subclass.")
