import networkx as nx
import numpy as np

from aptdefense.components.errors import InvalidParameterError
from aptdefense.components.network.interface import NetworkGenerator, NetworkSpec
from aptdefense.components.network.network import Network


def generate_scale_free(n: int, m: int, seed: int, gamma: float = None) -> Network:
    """Generate a connected scale-free network, stored as symmetric directed adjacency.

    Without gamma, preferential attachment is used: networkx seeds it with a
    star of m + 1 nodes and every further node attaches m edges, so the
    network has m * (n - m) undirected edges. With gamma, an expected-degree
    graph with degrees proportional to (i + 1)^(-1 / (gamma - 1)) and mean
    degree 2m is drawn instead, which allows tuning the power-law exponent.

    @parameter n : int - Number of nodes
    @parameter m : int - Edges per new node (mean degree 2m for the tunable variant)
    @parameter seed : int - RNG seed
    @parameter gamma : float - Power-law exponent, must be > 2 when given
    @returns Network - Connected scale-free network.
    """
    if m < 1 or n < m:
        raise InvalidParameterError(f"Scale-free generator needs n >= m >= 1 (n={n}, m={m})")
    if gamma is None:
        if n == m:
            raise InvalidParameterError(
                f"Preferential attachment needs more nodes than edges per node (n={n}, m={m})"
            )
        graph = nx.barabasi_albert_graph(n, m, seed=seed)
        return Network.from_graph(graph, name=f"scale-free(n={n},m={m},seed={seed})")

    if gamma <= 2:
        raise InvalidParameterError(f"Power-law exponent must exceed 2 (gamma={gamma})")
    expected = (np.arange(n) + 1.0) ** (-1.0 / (gamma - 1.0))
    expected *= 2.0 * m * n / expected.sum()
    graph = nx.expected_degree_graph(expected.tolist(), seed=seed, selfloops=False)
    stitch_components(graph, seed)
    return Network.from_graph(
        graph, name=f"scale-free(n={n},m={m},gamma={gamma:g},seed={seed})"
    )


def stitch_components(graph: nx.Graph, seed: int) -> int:
    """Join every component to the largest one with a single random edge
    @parameter graph : nx.Graph - Undirected graph, modified in place
    @parameter seed : int - RNG seed
    @returns int - Number of edges added.
    """
    rng = np.random.default_rng(seed)
    components = sorted(
        nx.connected_components(graph), key=lambda nodes: (-len(nodes), min(nodes))
    )
    giant = sorted(components[0])
    for component in components[1:]:
        graph.add_edge(min(component), giant[int(rng.integers(len(giant)))])
    return len(components) - 1


class ScaleFreeGenerator(NetworkGenerator):
    """
    Preferential-attachment scale-free networks built with networkx.
    """

    def __init__(self):
        super().__init__()
        self.name = "scale-free"
        self.requires_library = ["networkx"]
        self.description = "Barabasi-Albert preferential attachment (exponent close to 3)."

    def generate(self, spec: NetworkSpec, seed: int) -> Network:
        return generate_scale_free(spec.n, spec.m, seed)


class TunableScaleFreeGenerator(NetworkGenerator):
    """
    Expected-degree scale-free networks with a configurable power-law exponent.
    """

    def __init__(self):
        super().__init__()
        self.name = "scale-free-gamma"
        self.requires_library = ["networkx"]
        self.description = "Expected-degree graph with degrees following a power law of exponent gamma."

    def generate(self, spec: NetworkSpec, seed: int) -> Network:
        return generate_scale_free(spec.n, spec.m, seed, gamma=spec.gamma)
