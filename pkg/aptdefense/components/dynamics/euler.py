import numpy as np

from aptdefense.components.control.control import ControlTrajectory
from aptdefense.components.dynamics.interface import Integrator
from aptdefense.components.dynamics.model import (
    AdjointTrajectory,
    AttackStrategy,
    ModelParams,
    StateTrajectory,
    adjoint_rhs,
    state_rhs,
)
from aptdefense.components.errors import DimensionError, StepSizeError, ValidationError
from aptdefense.components.network.network import Network

# Tolerated pre-clip overshoot of [0, 1] per step, in units of dt.
CLIP_FACTOR = 10.0


def check_grid(u: ControlTrajectory, net: Network, params: ModelParams) -> None:
    if u.steps != params.steps:
        raise DimensionError(f"Control has {u.steps} steps, params expect {params.steps}")
    if u.n != net.n:
        raise DimensionError(f"Control covers {u.n} nodes, network has {net.n}")


def forward_integrate(
    C0: np.ndarray,
    u: ControlTrajectory,
    net: Network,
    atk: AttackStrategy,
    params: ModelParams,
) -> StateTrajectory:
    """Explicit Euler for the expected state; every step is clipped to [0, 1]
    after checking that the overshoot stays within CLIP_FACTOR * dt.
    @parameter C0 : np.ndarray - Initial expected state
    @parameter u : ControlTrajectory - Defense strategy on the grid
    @parameter net : Network - Access network
    @parameter atk : AttackStrategy - Attack rates
    @parameter params : ModelParams - Infection force and grid
    @returns StateTrajectory - Expected state on the grid.
    """
    check_grid(u, net, params)
    C0 = np.asarray(C0, dtype=float)
    if C0.shape != (net.n,) or atk.n != net.n:
        raise DimensionError("Initial state and attack rates need one entry per node")
    if np.any(C0 < 0.0) or np.any(C0 > 1.0):
        raise ValidationError("Initial expected state must lie in [0, 1]")

    dt = params.dt
    tolerance = CLIP_FACTOR * dt
    values = np.empty((params.steps + 1, net.n))
    values[0] = C0
    for k in range(params.steps):
        step = values[k] + dt * state_rhs(
            values[k], u.x[k], u.y[k], net, atk, params.beta
        )
        overshoot = max(-step.min(), step.max() - 1.0)
        if overshoot > tolerance:
            raise StepSizeError(
                f"Euler step at t={k * dt:g} left [0, 1] by {overshoot:g}; "
                f"increase the number of steps (currently {params.steps})"
            )
        values[k + 1] = np.clip(step, 0.0, 1.0)
    return StateTrajectory(values)


def backward_integrate(
    traj: StateTrajectory,
    u: ControlTrajectory,
    net: Network,
    atk: AttackStrategy,
    params: ModelParams,
    w: np.ndarray = None,
) -> AdjointTrajectory:
    """Explicit backward march for the adjoint from lambda(T) = 0, evaluating the
    right-hand side at the right endpoint t_{k+1}.
    @parameter traj : StateTrajectory - Expected state on the grid
    @parameter u : ControlTrajectory - Defense strategy on the grid
    @parameter net : Network - Access network
    @parameter atk : AttackStrategy - Attack rates
    @parameter params : ModelParams - Infection force and grid
    @parameter w : np.ndarray - Loss weights, defaults to the out-degrees
    @returns AdjointTrajectory - Costate on the grid.
    """
    check_grid(u, net, params)
    if not traj.same_grid(u):
        raise DimensionError("State and control trajectories live on different grids")
    w = net.weights if w is None else np.asarray(w, dtype=float)

    dt = params.dt
    C = traj.values
    values = np.zeros((params.steps + 1, net.n))
    for k in range(params.steps - 1, -1, -1):
        values[k] = values[k + 1] - dt * adjoint_rhs(
            values[k + 1], C[k + 1], u.x[k + 1], u.y[k + 1], net, atk, params.beta, w
        )
    return AdjointTrajectory(values)


class EulerIntegrator(Integrator):
    """
    Forward-backward explicit Euler scheme on a uniform grid.
    """

    def __init__(self):
        super().__init__()
        self.name = "EulerIntegrator"
        self.requires_library = ["numpy"]
        self.description = "First-order explicit Euler, forward for the state and backward for the adjoint."

    def forward(
        self,
        C0: np.ndarray,
        u: ControlTrajectory,
        net: Network,
        atk: AttackStrategy,
        params: ModelParams,
    ) -> StateTrajectory:
        return forward_integrate(C0, u, net, atk, params)

    def backward(
        self,
        traj: StateTrajectory,
        u: ControlTrajectory,
        net: Network,
        atk: AttackStrategy,
        params: ModelParams,
        w: np.ndarray,
    ) -> AdjointTrajectory:
        return backward_integrate(traj, u, net, atk, params, w)
