import numpy as np

from aptdefense.components.component import DefenseComponent
from aptdefense.components.control.control import ControlTrajectory
from aptdefense.components.dynamics.model import (
    AdjointTrajectory,
    AttackStrategy,
    ModelParams,
    StateTrajectory,
)
from aptdefense.components.network.network import Network


class Integrator(DefenseComponent):
    """
    Interface for fixed-step integrators of the state and adjoint systems.
    """

    def __init__(self):
        super().__init__()
        self.order = 1

    def forward(
        self,
        C0: np.ndarray,
        u: ControlTrajectory,
        net: Network,
        atk: AttackStrategy,
        params: ModelParams,
    ) -> StateTrajectory:
        """Integrate the expected state forward from C(0) = C0
        @parameter: C0 : np.ndarray - Initial expected state
        @parameter: u : ControlTrajectory - Defense strategy on the grid
        @parameter: net : Network - Access network
        @parameter: atk : AttackStrategy - Attack rates
        @parameter: params : ModelParams - Infection force and grid
        @returns StateTrajectory - Expected state on the grid.
        """
        raise NotImplementedError("forward method must be implemented by a subclass.")

    def backward(
        self,
        traj: StateTrajectory,
        u: ControlTrajectory,
        net: Network,
        atk: AttackStrategy,
        params: ModelParams,
        w: np.ndarray,
    ) -> AdjointTrajectory:
        """Integrate the adjoint backward from lambda(T) = 0
        @parameter: traj : StateTrajectory - Expected state on the grid
        @parameter: u : ControlTrajectory - Defense strategy on the grid
        @parameter: net : Network - Access network
        @parameter: atk : AttackStrategy - Attack rates
        @parameter: params : ModelParams - Infection force and grid
        @parameter: w : np.ndarray - Loss weights
        @returns AdjointTrajectory - Costate on the grid.
        """
        raise NotImplementedError("backward method must be implemented by a subclass.")
