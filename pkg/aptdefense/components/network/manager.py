from wasabi import msg

from aptdefense.components.errors import InvalidParameterError
from aptdefense.components.network.edgelist import EdgeListReader
from aptdefense.components.network.interface import NetworkGenerator, NetworkSpec
from aptdefense.components.network.network import Network
from aptdefense.components.network.scalefree import (
    ScaleFreeGenerator,
    TunableScaleFreeGenerator,
)
from aptdefense.components.network.smallworld import SmallWorldGenerator


class NetworkManager:
    def __init__(self):
        self.generators: dict[str, NetworkGenerator] = {
            "scale-free": ScaleFreeGenerator(),
            "scale-free-gamma": TunableScaleFreeGenerator(),
            "small-world": SmallWorldGenerator(),
            "edge-list": EdgeListReader(),
        }
        self.selected_generator: NetworkGenerator = self.generators["scale-free"]

    def build(self, spec: NetworkSpec, seed: int) -> Network:
        """Build a network with the generator named by the spec
        @parameter: spec : NetworkSpec - Network source description
        @parameter: seed : int - RNG seed for seeded generators
        @returns Network - The network.
        """
        if not self.set_generator(spec.model):
            raise InvalidParameterError(f"Network model {spec.model} not found")
        available, message = self.selected_generator.available()
        if not available:
            raise InvalidParameterError(f"{self.selected_generator.name}: {message}")
        return self.selected_generator.generate(spec, seed)

    def set_generator(self, generator: str) -> bool:
        if generator in self.generators:
            self.selected_generator = self.generators[generator]
            return True
        else:
            msg.warn(f"Network model {generator} not found")
            return False

    def get_generators(self) -> dict[str, NetworkGenerator]:
        return self.generators
