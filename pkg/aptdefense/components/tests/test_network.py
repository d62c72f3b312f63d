from pathlib import Path

import networkx as nx
import numpy as np
import pytest

from aptdefense.components.errors import (
    EdgeListParseError,
    InvalidParameterError,
    ValidationError,
)
from aptdefense.components.network.edgelist import dump_edge_list, load_edge_list
from aptdefense.components.network.interface import NetworkSpec
from aptdefense.components.network.manager import NetworkManager
from aptdefense.components.network.network import Network
from aptdefense.components.network.scalefree import generate_scale_free
from aptdefense.components.network.smallworld import generate_small_world


@pytest.fixture
def data_dir():
    return Path(__file__).parent / "data"


def is_connected(network: Network) -> bool:
    return nx.is_connected(network.to_graph().to_undirected())


def test_network_weights_are_out_degrees():
    network = Network.from_edges(3, [(0, 1), (0, 2), (2, 1)])
    assert network.weights.tolist() == [2, 0, 1]
    assert network.in_degrees.tolist() == [0, 2, 1]
    assert network.edge_count == 3
    assert not network.is_symmetric


def test_network_rejects_self_access_and_non_binary_entries():
    with pytest.raises(ValidationError):
        Network(np.array([[1, 0], [0, 0]]))
    with pytest.raises(ValidationError):
        Network(np.array([[0, 2], [0, 0]]))


def test_network_is_read_only():
    network = Network.from_edges(2, [(0, 1)])
    with pytest.raises(ValueError):
        network.adj[1, 0] = 1


def test_inflow_and_outflow_follow_edge_direction():
    network = Network.from_edges(2, [(0, 1)])
    assert network.inflow(np.array([0.5, 0.0])).tolist() == [0.0, 0.5]
    assert network.outflow(np.array([0.0, 2.0])).tolist() == [2.0, 0.0]
    grid = np.array([[0.5, 0.0], [1.0, 0.0]])
    assert network.inflow(grid).tolist() == [[0.0, 0.5], [0.0, 1.0]]


def test_scale_free_three_nodes_is_a_tree():
    network = generate_scale_free(3, 1, seed=11)
    assert network.n == 3
    assert network.edge_count == 4
    assert network.is_symmetric
    assert is_connected(network)


def test_scale_free_hundred_nodes_edge_count():
    network = generate_scale_free(100, 2, seed=5)
    # star seed of m + 1 nodes, then m edges per new node: m * (n - m) undirected edges
    assert network.edge_count == 2 * 2 * 98
    assert np.array_equal(network.weights, network.adj.sum(axis=1))
    assert is_connected(network)
    assert network.weights.max() > 2 * network.weights.mean()


def test_scale_free_rejects_invalid_parameters():
    with pytest.raises(InvalidParameterError):
        generate_scale_free(1, 2, seed=0)
    with pytest.raises(InvalidParameterError):
        generate_scale_free(10, 0, seed=0)
    with pytest.raises(InvalidParameterError):
        generate_scale_free(100, 2, seed=0, gamma=2.0)


def test_scale_free_is_reproducible():
    assert generate_scale_free(50, 2, seed=3) == generate_scale_free(50, 2, seed=3)
    assert generate_scale_free(50, 2, seed=3) != generate_scale_free(50, 2, seed=4)


def test_tunable_scale_free_is_connected_and_symmetric():
    for gamma in (2.8, 3.1, 3.4):
        network = generate_scale_free(100, 2, seed=9, gamma=gamma)
        assert network.n == 100
        assert network.is_symmetric
        assert is_connected(network)
        assert network == generate_scale_free(100, 2, seed=9, gamma=gamma)


def test_small_world_without_rewiring_is_a_ring():
    network = generate_small_world(6, 2, 0.0, seed=1)
    assert network.weights.tolist() == [2] * 6
    for i in range(6):
        assert np.flatnonzero(network.adj[i]).tolist() == sorted(
            [(i - 1) % 6, (i + 1) % 6]
        )


def test_small_world_rewiring_preserves_edge_count():
    network = generate_small_world(100, 4, 0.3, seed=7)
    assert network.edge_count == 2 * 200
    assert network.is_symmetric


def test_small_world_full_rewiring_lowers_clustering():
    lattice = generate_small_world(100, 4, 0.0, seed=7)
    rewired = generate_small_world(100, 4, 1.0, seed=7)
    assert lattice.average_clustering() == pytest.approx(0.5)
    assert rewired.average_clustering() < 0.25


@pytest.mark.parametrize("n,k,p", [(10, 3, 0.1), (4, 4, 0.1), (10, 2, 1.5), (10, 0, 0.1)])
def test_small_world_rejects_invalid_parameters(n, k, p):
    with pytest.raises(InvalidParameterError):
        generate_small_world(n, k, p, seed=0)


def test_load_edge_list_examples():
    network = load_edge_list("0 1\n1 0")
    assert network.n == 2
    assert network.weights.tolist() == [1, 1]

    network = load_edge_list("0 1\n0 1\n1 2")
    assert network.n == 3
    assert network.adj[0, 1] == 1
    assert network.weights.tolist() == [1, 1, 0]


def test_load_edge_list_rejects_self_loops():
    with pytest.raises(ValidationError, match="self-loop"):
        load_edge_list("0 1\n2 2")


def test_load_edge_list_reports_line_numbers():
    with pytest.raises(EdgeListParseError) as error:
        load_edge_list("# header\n0 1\n1\n")
    assert error.value.line_number == 3
    assert "Line 3" in str(error.value)

    with pytest.raises(EdgeListParseError, match="integers"):
        load_edge_list("0 x")
    with pytest.raises(EdgeListParseError, match="nonnegative"):
        load_edge_list("0 -1")


def test_load_edge_list_rejects_empty_input():
    with pytest.raises(ValidationError):
        load_edge_list("# nothing here\n")


def test_load_edge_list_remaps_sparse_ids(data_dir):
    text = (data_dir / "example_network.txt").read_text()
    network = load_edge_list(text, remap=True)
    assert network.n == 4
    assert network.labels == (1, 2, 5, 9)
    assert network.edge_count == 9
    # 2 -> 9 is the only one-way edge
    assert network.adj[1, 3] == 1
    assert network.adj[3, 1] == 0


def test_nodes_header_keeps_isolated_nodes(data_dir):
    network = load_edge_list((data_dir / "isolated_nodes.txt").read_text())
    assert network.n == 3
    assert network.edge_count == 0


def test_dump_edge_list_round_trip():
    network = generate_small_world(20, 4, 0.2, seed=2)
    text = dump_edge_list(network)
    assert text.startswith("# nodes 20 edges 80\n")
    assert load_edge_list(text) == network

    assert load_edge_list(dump_edge_list(Network.from_edges(4, [(0, 1)]))).n == 4


def test_network_manager_builds_every_source(data_dir):
    manager = NetworkManager()
    assert set(manager.get_generators()) == {
        "scale-free",
        "scale-free-gamma",
        "small-world",
        "edge-list",
    }
    network = manager.build(
        NetworkSpec(model="edge-list", path=str(data_dir / "two_nodes.txt")), seed=0
    )
    assert network.name == "two_nodes.txt"
    assert network.edge_count == 2

    small_world = manager.build(NetworkSpec(model="small-world", n=30, k=4, p=0.1), 5)
    assert small_world == generate_small_world(30, 4, 0.1, seed=5)


def test_network_manager_missing_edge_list():
    with pytest.raises(ValidationError):
        NetworkManager().build(NetworkSpec(model="edge-list", path="missing.txt"), 0)


def test_network_manager_selection():
    manager = NetworkManager()
    assert manager.selected_generator.name == manager.generators["scale-free"].name
    assert manager.set_generator("small-world")
    assert manager.selected_generator is manager.generators["small-world"]
    assert not manager.set_generator("lattice")
    assert manager.selected_generator is manager.generators["small-world"]
