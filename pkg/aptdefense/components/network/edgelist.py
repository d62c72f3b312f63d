import re
from pathlib import Path

from wasabi import msg

from aptdefense.components.errors import EdgeListParseError, ValidationError
from aptdefense.components.network.interface import NetworkGenerator, NetworkSpec
from aptdefense.components.network.network import Network

COMMENT_PREFIXES = ("#", "%")
NODES_HEADER = re.compile(r"^#\s*nodes\s+(\d+)")


def load_edge_list(text: str, remap: bool = False, name: str = "") -> Network:
    """Parse a directed edge list, one "i j" pair of node ids per line.

    Lines starting with '#' or '%' are comments. A "# nodes N" header written
    by dump_edge_list fixes the node count so trailing isolated nodes survive a
    round trip; otherwise the network is sized by the largest id + 1.
    Duplicate edges collapse to one.

    @parameter text : str - Edge list content
    @parameter remap : bool - Compact sparse or 1-based ids to dense 0-based ids
    @parameter name : str - Name of the network, usually the file name
    @returns Network - Network with the original ids as labels.
    """
    edges = []
    declared_nodes = None
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line == "":
            continue
        if line.startswith(COMMENT_PREFIXES):
            header = NODES_HEADER.match(line)
            if header:
                declared_nodes = int(header.group(1))
            continue

        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(line_number, raw, "expected two node ids")
        try:
            source, target = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(line_number, raw, "node ids must be integers")
        if source < 0 or target < 0:
            raise EdgeListParseError(line_number, raw, "node ids must be nonnegative")
        if source == target:
            raise ValidationError(f"Line {line_number}: self-loop at node {source}")
        edges.append((source, target))

    if not edges and not declared_nodes:
        raise ValidationError("Edge list holds no edges")

    if remap:
        labels = sorted({node for edge in edges for node in edge})
        index = {label: i for i, label in enumerate(labels)}
        edges = [(index[source], index[target]) for source, target in edges]
        return Network.from_edges(len(labels), edges, labels=labels, name=name)

    n = max((max(edge) for edge in edges), default=-1) + 1
    if declared_nodes is not None:
        if declared_nodes < n:
            raise ValidationError(
                f"Header declares {declared_nodes} nodes but ids reach {n - 1}"
            )
        n = declared_nodes
    return Network.from_edges(n, edges, name=name)


def dump_edge_list(network: Network) -> str:
    """Serialize a network to edge-list text readable by load_edge_list
    @parameter network : Network - Network to export
    @returns str - Edge-list text with a "# nodes N edges E" header.
    """
    lines = [f"# nodes {network.n} edges {network.edge_count}"]
    lines += [f"{source} {target}" for source, target in network.edges()]
    return "\n".join(lines) + "\n"


class EdgeListReader(NetworkGenerator):
    """
    Reads realistic networks from edge-list files.
    """

    def __init__(self):
        super().__init__()
        self.name = "edge-list"
        self.seeded = False
        self.description = "Loads a directed edge list; '#' and '%' lines are comments."

    def generate(self, spec: NetworkSpec, seed: int) -> Network:
        path = Path(spec.path)
        if not path.is_file():
            raise ValidationError(f"Edge list {path} does not exist")
        msg.info(f"Reading {str(path)}")
        network = load_edge_list(
            path.read_text(encoding="utf-8"), remap=spec.remap, name=path.name
        )
        msg.good(f"Loaded {path.name} with {network.n} nodes")
        return network
