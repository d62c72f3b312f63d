import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.integrate import cumulative_trapezoid, trapezoid

from aptdefense.components.control.control import Bounds, ControlTrajectory
from aptdefense.components.dynamics.model import (
    AttackStrategy,
    ModelParams,
    StateTrajectory,
    pressure,
    state_rhs,
)
from aptdefense.components.errors import DimensionError
from aptdefense.components.network.network import Network


class ObjectiveBreakdown(BaseModel):
    """Expected loss, control cost and their sum J."""

    model_config = ConfigDict(frozen=True)

    loss: float
    cost: float
    j: float


class DiagnosticCurves:
    """Cumulative effectiveness CE(t_k) and superposed control SC(t_k)."""

    def __init__(self, ce: np.ndarray, sc: np.ndarray):
        self._ce = np.asarray(ce, dtype=float)
        self._sc = np.asarray(sc, dtype=float)
        self._ce.setflags(write=False)
        self._sc.setflags(write=False)

    @property
    def ce(self) -> np.ndarray:
        return self._ce

    @property
    def sc(self) -> np.ndarray:
        return self._sc


def check_shared_grid(
    traj: StateTrajectory, u: ControlTrajectory, params: ModelParams
) -> None:
    if not traj.same_grid(u) or traj.steps != params.steps:
        raise DimensionError(
            f"State ({traj.steps} steps, {traj.n} nodes), control ({u.steps} steps, "
            f"{u.n} nodes) and params ({params.steps} steps) must share one grid"
        )


def running_cost(
    C: np.ndarray, x: np.ndarray, y: np.ndarray, w: np.ndarray
) -> float | np.ndarray:
    """L = sum_i (w_i C_i + x_i + y_i); per row when given grids."""
    return np.sum(w * C + x + y, axis=-1)


def objective(
    traj: StateTrajectory,
    u: ControlTrajectory,
    w: np.ndarray,
    params: ModelParams,
) -> ObjectiveBreakdown:
    """Loss, Cost and J by trapezoidal quadrature on the integration grid
    @parameter traj : StateTrajectory - Expected state
    @parameter u : ControlTrajectory - Defense strategy
    @parameter w : np.ndarray - Loss weights
    @parameter params : ModelParams - Grid
    @returns ObjectiveBreakdown - loss, cost and j = loss + cost.
    """
    check_shared_grid(traj, u, params)
    loss = float(trapezoid((traj.values * w).sum(axis=1), dx=params.dt))
    cost = float(trapezoid((u.x + u.y).sum(axis=1), dx=params.dt))
    return ObjectiveBreakdown(loss=loss, cost=cost, j=loss + cost)


def hamiltonian(
    C: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    lam: np.ndarray,
    net: Network,
    atk: AttackStrategy,
    beta: float,
    w: np.ndarray,
) -> float:
    """H = L(C, u) + sum_i lambda_i dC_i/dt at a single grid point."""
    return float(
        running_cost(C, x, y, w) + np.dot(lam, state_rhs(C, x, y, net, atk, beta))
    )


def hamiltonian_dx(
    C: np.ndarray,
    x: np.ndarray,
    lam: np.ndarray,
    net: Network,
    atk: AttackStrategy,
    beta: float,
) -> np.ndarray:
    """dH/dx_i = 1 - (lambda_i / x_i^2)[a_i + beta sum_j a_ji C_j](1 - C_i)."""
    return 1.0 - lam / x**2 * pressure(C, net, atk, beta) * (1.0 - C)


def curves(
    traj: StateTrajectory,
    u: ControlTrajectory,
    w: np.ndarray,
    params: ModelParams,
) -> DiagnosticCurves:
    """CE(t_k) as the trapezoidal integral of L over [0, t_k] and SC(t_k) = sum_i (x_i + y_i)."""
    check_shared_grid(traj, u, params)
    rate = running_cost(traj.values, u.x, u.y, w)
    ce = cumulative_trapezoid(rate, dx=params.dt, initial=0.0)
    sc = (u.x + u.y).sum(axis=1)
    return DiagnosticCurves(ce, sc)


def control_energy_bound(
    u: ControlTrajectory, bounds: Bounds, params: ModelParams
) -> float:
    """(1 / max(x_hi, y_hi)) * integral of ||u||_2^2, a lower bound of J(u) for admissible u."""
    energy = (u.x**2 + u.y**2).sum(axis=1)
    return float(trapezoid(energy, dx=params.dt)) / bounds.largest
