import networkx as nx

from aptdefense.components.errors import InvalidParameterError
from aptdefense.components.network.interface import NetworkGenerator, NetworkSpec
from aptdefense.components.network.network import Network


def generate_small_world(n: int, k: int, p: float, seed: int) -> Network:
    """Generate a Watts-Strogatz small-world network as symmetric directed adjacency
    @parameter n : int - Number of nodes
    @parameter k : int - Even ring-lattice degree
    @parameter p : float - Rewiring probability per edge
    @parameter seed : int - RNG seed
    @returns Network - Network with exactly n * k / 2 undirected edges.
    """
    if k < 2 or k % 2 != 0:
        raise InvalidParameterError(f"Base degree k must be even and >= 2 (k={k})")
    if k >= n:
        raise InvalidParameterError(f"Base degree k must be smaller than n (n={n}, k={k})")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"Rewiring probability must lie in [0, 1] (p={p})")
    graph = nx.watts_strogatz_graph(n, k, p, seed=seed)
    return Network.from_graph(graph, name=f"small-world(n={n},k={k},p={p:g},seed={seed})")


class SmallWorldGenerator(NetworkGenerator):
    """
    Small-world networks from a rewired ring lattice, built with networkx.
    """

    def __init__(self):
        super().__init__()
        self.name = "small-world"
        self.requires_library = ["networkx"]
        self.description = "Watts-Strogatz ring lattice with random edge rewiring."

    def generate(self, spec: NetworkSpec, seed: int) -> Network:
        return generate_small_world(spec.n, spec.k, spec.p, seed)
