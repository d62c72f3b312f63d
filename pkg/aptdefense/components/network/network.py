import networkx as nx
import numpy as np
from scipy import sparse

from aptdefense.components.errors import DimensionError, ValidationError


class Network:
    """
    Directed access network. Edge i -> j means node i can access node j.
    The loss weight of a node is its out-degree. Instances are immutable.
    """

    def __init__(
        self,
        adj: np.ndarray,
        labels: list[int] = None,
        name: str = "",
    ):
        adj = np.asarray(adj)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise DimensionError(f"Adjacency must be square, got shape {adj.shape}")
        if adj.shape[0] < 1:
            raise ValidationError("A network needs at least one node")
        if not np.isin(adj, (0, 1)).all():
            raise ValidationError("Adjacency entries must be 0 or 1")
        if np.any(np.diagonal(adj)):
            node = int(np.flatnonzero(np.diagonal(adj))[0])
            raise ValidationError(f"Self-access edge at node {node}")

        self._adj = adj.astype(np.int8)
        self._adj.setflags(write=False)
        self._weights = self._adj.sum(axis=1, dtype=np.int64)
        self._weights.setflags(write=False)
        self._matrix = sparse.csr_matrix(self._adj, dtype=float)
        self._matrix_t = self._matrix.transpose().tocsr()
        if labels is None:
            labels = range(adj.shape[0])
        self._labels = tuple(int(label) for label in labels)
        if len(self._labels) != adj.shape[0]:
            raise DimensionError("One label per node required")
        self._name = name

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adj(self) -> np.ndarray:
        return self._adj

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def labels(self) -> tuple[int, ...]:
        return self._labels

    @property
    def name(self) -> str:
        return self._name

    @property
    def edge_count(self) -> int:
        """Number of directed edges."""
        return int(self._weights.sum())

    @property
    def in_degrees(self) -> np.ndarray:
        return self._adj.sum(axis=0, dtype=np.int64)

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self._adj, self._adj.T))

    def inflow(self, values: np.ndarray) -> np.ndarray:
        """Sum over in-neighbours, sum_j a_ji v_j. Accepts a vector or an (M+1)xN grid."""
        values = np.asarray(values, dtype=float)
        return np.asarray(self._matrix_t @ values.T).T

    def outflow(self, values: np.ndarray) -> np.ndarray:
        """Sum over out-neighbours, sum_j a_ij v_j. Accepts a vector or an (M+1)xN grid."""
        values = np.asarray(values, dtype=float)
        return np.asarray(self._matrix @ values.T).T

    def edges(self) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(self._adj)
        return list(zip(rows.tolist(), cols.tolist()))

    def to_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def average_clustering(self) -> float:
        """Mean clustering coefficient of the undirected skeleton."""
        return float(nx.average_clustering(self.to_graph().to_undirected()))

    @classmethod
    def from_edges(
        cls, n: int, edges: list[tuple[int, int]], labels: list[int] = None, name: str = ""
    ):
        """Build a network from directed edges; duplicates collapse to one."""
        adj = np.zeros((n, n), dtype=np.int8)
        for source, target in edges:
            adj[source, target] = 1
        return cls(adj, labels=labels, name=name)

    @classmethod
    def from_graph(cls, graph: nx.Graph, name: str = ""):
        """Embed an undirected networkx graph as a symmetric directed network."""
        graph = nx.convert_node_labels_to_integers(graph, ordering="sorted")
        adj = nx.to_numpy_array(graph, nodelist=range(len(graph)), dtype=np.int8)
        adj = np.maximum(adj, adj.T)
        return cls(adj, name=name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        return hash(self._adj.tobytes())

    def __repr__(self) -> str:
        return f"Network(name={self._name!r}, n={self.n}, edges={self.edge_count})"
