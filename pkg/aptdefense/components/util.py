from pathlib import Path

import numpy as np

from aptdefense.components.errors import DimensionError, ValidationError

# Stream keys; every consumer of randomness derives its own seed from the
# single configured seed.
GENERATOR_STREAM = 0
REPLICATE_STREAM = 1


def stream_seed(seed: int, *keys: int) -> int:
    """Derive an independent 32-bit seed for a consumer of randomness
    @parameter seed : int - Root seed (any 64-bit integer)
    @parameter keys : int - Consumer keys, e.g. (REPLICATE_STREAM, point, replicate)
    @returns int - Seed usable by numpy and networkx.
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=tuple(keys))
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def resolve_vector(source: str | float, n: int, name: str = "vector") -> np.ndarray:
    """Resolve a per-node vector from a scalar (broadcast) or a path to a list of values
    @parameter source : str | float - Scalar value or path to a whitespace separated list
    @parameter n : int - Number of nodes
    @parameter name : str - Name used in error messages
    @returns np.ndarray - Vector of length n.
    """
    try:
        value = float(source)
    except (TypeError, ValueError):
        path = Path(str(source))
        if not path.is_file():
            raise ValidationError(f"{name}: {source} is neither a number nor a file")
        values = np.loadtxt(path, dtype=float, ndmin=1, comments="#")
        if values.shape != (n,):
            raise DimensionError(
                f"{name}: {path} holds {values.size} values, network has {n} nodes"
            )
        return values
    return np.full(n, value, dtype=float)
