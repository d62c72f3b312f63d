import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from aptdefense.components.errors import (
    DimensionError,
    DivisionGuardError,
    ValidationError,
)
from aptdefense.components.network.network import Network


class ModelParams(BaseModel):
    """Infection force, horizon and the uniform integration grid."""

    model_config = ConfigDict(frozen=True)

    beta: float = Field(default=0.001, gt=0)
    horizon: float = Field(default=20.0, gt=0)
    steps: int = Field(default=2000, ge=1)

    @property
    def dt(self) -> float:
        return self.horizon / self.steps

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.horizon, self.steps + 1)


class AttackStrategy:
    """Per-node external attack cost rates a_i."""

    def __init__(self, a: np.ndarray):
        a = np.array(a, dtype=float, ndmin=1)
        if a.ndim != 1:
            raise DimensionError("Attack strategy must be a vector")
        if np.any(a < 0) or not np.all(np.isfinite(a)):
            raise ValidationError("Attack rates must be finite and nonnegative")
        a.setflags(write=False)
        self._a = a

    @property
    def a(self) -> np.ndarray:
        return self._a

    @property
    def n(self) -> int:
        return self._a.size

    @classmethod
    def uniform(cls, level: float, n: int):
        return cls(np.full(n, level, dtype=float))


class Trajectory:
    """Values of a per-node quantity on the grid t_k = k * dt, shape (M+1) x N."""

    def __init__(self, values: np.ndarray):
        values = np.array(values, dtype=float)
        if values.ndim != 2 or values.shape[0] < 1:
            raise DimensionError(f"Trajectory must be (M+1) x N, got {values.shape}")
        values.setflags(write=False)
        self._values = values

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def steps(self) -> int:
        return self._values.shape[0] - 1

    @property
    def n(self) -> int:
        return self._values.shape[1]

    def same_grid(self, other) -> bool:
        return self.steps == other.steps and self.n == other.n


class StateTrajectory(Trajectory):
    """Expected compromise probabilities C_i(t_k)."""

    def __init__(self, values: np.ndarray):
        super().__init__(values)
        if np.any(self.values < 0.0) or np.any(self.values > 1.0):
            raise ValidationError("Expected states must lie in [0, 1]")

    @property
    def secure(self) -> np.ndarray:
        """S_i(t_k) = 1 - C_i(t_k)."""
        return 1.0 - self.values


class AdjointTrajectory(Trajectory):
    """Costates lambda_i(t_k); the terminal row is zero."""

    def __init__(self, values: np.ndarray):
        super().__init__(values)
        if np.any(self.values[-1] != 0.0):
            raise ValidationError("Adjoint must vanish at the terminal time")


def pressure(
    C: np.ndarray, net: Network, atk: AttackStrategy, beta: float
) -> np.ndarray:
    """Compromise pressure a_i + beta * sum_j a_ji C_j, for a vector or a whole grid."""
    return atk.a + beta * net.inflow(C)


def guard_division(x: np.ndarray) -> None:
    if np.any(x <= 0):
        raise DivisionGuardError("Prevention rates must be positive")


def state_rhs(
    C: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    net: Network,
    atk: AttackStrategy,
    beta: float,
) -> np.ndarray:
    """dC_i/dt = (1/x_i)[a_i + beta sum_j a_ji C_j](1 - C_i) - y_i C_i
    @parameter C : np.ndarray - Expected state
    @parameter x : np.ndarray - Prevention rates
    @parameter y : np.ndarray - Recovery rates
    @parameter net : Network - Access network
    @parameter atk : AttackStrategy - Attack rates
    @parameter beta : float - Infection force
    @returns np.ndarray - Time derivative of the expected state.
    """
    guard_division(x)
    return pressure(C, net, atk, beta) / x * (1.0 - C) - y * C


def adjoint_rhs(
    lam: np.ndarray,
    C: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    net: Network,
    atk: AttackStrategy,
    beta: float,
    w: np.ndarray,
) -> np.ndarray:
    """dlambda_i/dt = -w_i + y_i lambda_i + (lambda_i/x_i)[a_i + beta sum_j a_ji C_j]
    - beta sum_j a_ij (1 - C_j) lambda_j / x_j
    @parameter lam : np.ndarray - Costate
    @parameter C : np.ndarray - Expected state
    @parameter x : np.ndarray - Prevention rates
    @parameter y : np.ndarray - Recovery rates
    @parameter net : Network - Access network
    @parameter atk : AttackStrategy - Attack rates
    @parameter beta : float - Infection force
    @parameter w : np.ndarray - Loss weights
    @returns np.ndarray - Time derivative of the costate.
    """
    guard_division(x)
    coupling = net.outflow((1.0 - C) * lam / x)
    return -w + y * lam + lam / x * pressure(C, net, atk, beta) - beta * coupling
