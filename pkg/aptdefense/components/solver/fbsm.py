import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from tqdm import tqdm
from wasabi import msg

from aptdefense.components.component import DefenseComponent
from aptdefense.components.control.control import (
    Bounds,
    ControlTrajectory,
    characterize_grid,
    static_control,
    switch_counts,
    validate,
)
from aptdefense.components.dynamics.euler import EulerIntegrator
from aptdefense.components.dynamics.interface import Integrator
from aptdefense.components.dynamics.model import (
    AdjointTrajectory,
    AttackStrategy,
    ModelParams,
    StateTrajectory,
)
from aptdefense.components.errors import DimensionError, ValidationError
from aptdefense.components.metrics.objective import (
    DiagnosticCurves,
    ObjectiveBreakdown,
    curves,
    objective,
)
from aptdefense.components.network.network import Network

# Floor of the per-entry recovery step
MIN_STEP = 1e-12


class SolverConfig(BaseModel):
    """Relaxation, recovery damping, convergence tolerance and iteration cap of the sweep.

    The residual of an iterate u, with u' characterized from the state and adjoint of u, is
        max( |x' - x| / |x| , (y - y')(1 - lambda C) / |y| )
    over grid and nodes: the prevention fixed-point change and the Hamiltonian
    gain still available in the recovery rate. tol bounds these directly, not
    the relaxed step. Prevention moves by `relaxation` towards x'; each recovery
    entry moves by its own step, multiplied by `shrink` when its switching
    direction flips and by `grow` otherwise, capped at `relaxation`. Entries at
    full step within sqrt(tol) of the recovery range from their bound land on it.
    A converged run returns prevention at x'.
    """

    model_config = ConfigDict(frozen=True)

    relaxation: float = Field(default=0.5, gt=0, le=1)
    shrink: float = Field(default=0.5, gt=0, lt=1)
    grow: float = Field(default=1.2, ge=1)
    tol: float = Field(default=1e-4, gt=0)
    max_iters: int = Field(default=500, ge=1)
    progress: bool = False


class SolveReport:
    """Returned strategy with its state, adjoint, objective and iteration diagnostics."""

    def __init__(
        self,
        u_star: ControlTrajectory,
        c_star: StateTrajectory,
        lambda_star: AdjointTrajectory,
        breakdown: ObjectiveBreakdown,
        curves: DiagnosticCurves,
        iterations: int,
        converged: bool,
        residual_history: list[float],
        j_history: list[float],
        singular_fraction: float = 0.0,
    ):
        self._u_star = u_star
        self._c_star = c_star
        self._lambda_star = lambda_star
        self._breakdown = breakdown
        self._curves = curves
        self._iterations = iterations
        self._converged = converged
        self._residual_history = list(residual_history)
        self._j_history = list(j_history)
        self._singular_fraction = singular_fraction

    @property
    def u_star(self) -> ControlTrajectory:
        return self._u_star

    @property
    def c_star(self) -> StateTrajectory:
        return self._c_star

    @property
    def lambda_star(self) -> AdjointTrajectory:
        return self._lambda_star

    @property
    def breakdown(self) -> ObjectiveBreakdown:
        return self._breakdown

    @property
    def j_star(self) -> float:
        return self._breakdown.j

    @property
    def loss_star(self) -> float:
        return self._breakdown.loss

    @property
    def cost_star(self) -> float:
        return self._breakdown.cost

    @property
    def curves(self) -> DiagnosticCurves:
        return self._curves

    @property
    def iterations(self) -> int:
        return self._iterations

    @property
    def converged(self) -> bool:
        return self._converged

    @property
    def residual_history(self) -> list[float]:
        return self._residual_history

    @property
    def j_history(self) -> list[float]:
        return self._j_history

    @property
    def singular_fraction(self) -> float:
        """Share of recovery entries returned strictly between their bounds."""
        return self._singular_fraction

    @property
    def switch_counts(self) -> np.ndarray:
        return switch_counts(self._u_star)

    def summary(self) -> dict:
        return {
            "J": self.j_star,
            "Loss": self.loss_star,
            "Cost": self.cost_star,
            "iterations": self._iterations,
            "converged": self._converged,
        }


def initial_guess(bounds: Bounds, params: ModelParams, n: int) -> ControlTrajectory:
    """Constant strategy at the midpoint of the admissible box."""
    return static_control(bounds.x_mid, bounds.y_mid, params, n, bounds)


def sweep_residual(
    u: ControlTrajectory, target: ControlTrajectory, C: np.ndarray, lam: np.ndarray
) -> float:
    """Optimality residual of an iterate against its characterized strategy
    @parameter u : ControlTrajectory - Current iterate
    @parameter target : ControlTrajectory - Strategy characterized from the state and adjoint of u
    @parameter C : np.ndarray - State of u on the grid
    @parameter lam : np.ndarray - Adjoint of u on the grid
    @returns float - Largest prevention change or remaining recovery gain, relative to u.
    """
    prevention = np.abs(target.x - u.x) / np.maximum(np.abs(u.x), 1e-12)
    recovery = (u.y - target.y) * (1.0 - lam * C) / np.maximum(np.abs(u.y), 1e-12)
    return float(max(prevention.max(), recovery.max()))


def adapt_steps(
    steps: np.ndarray, direction: np.ndarray, previous: np.ndarray, cfg: SolverConfig
) -> np.ndarray:
    """Shrink the recovery step of entries whose switching direction flipped, grow the others back."""
    flipped = direction * previous < 0
    return np.where(
        flipped,
        np.maximum(steps * cfg.shrink, MIN_STEP),
        np.minimum(steps * cfg.grow, cfg.relaxation),
    )


class ForwardBackwardSweep(DefenseComponent):
    """
    Forward-backward sweep for the optimality system: integrate the state
    forward, the adjoint backward, re-characterize the strategy and move the
    current one towards it until the optimality residual drops below tolerance.

    Recovery is bang-bang in the characterization. Where the switching function
    lambda C settles at 1 the characterized recovery flips between its bounds on
    every sweep; the per-entry steps shrink there and the iterate settles on the
    intermediate rate that keeps lambda C at 1.
    """

    def __init__(self, integrator: Integrator = None):
        super().__init__()
        self.name = "ForwardBackwardSweep"
        self.requires_library = ["numpy", "scipy"]
        self.description = "Relaxed forward-backward sweep with Pontryagin control characterization."
        self.integrator = EulerIntegrator() if integrator is None else integrator

    def solve(
        self,
        net: Network,
        atk: AttackStrategy,
        params: ModelParams,
        bounds: Bounds,
        C0: np.ndarray,
        cfg: SolverConfig = None,
        initial: ControlTrajectory = None,
    ) -> SolveReport:
        """Solve the optimal defense problem
        @parameter net : Network - Access network
        @parameter atk : AttackStrategy - Attack rates
        @parameter params : ModelParams - Infection force and grid
        @parameter bounds : Bounds - Admissible box
        @parameter C0 : np.ndarray - Initial expected state
        @parameter cfg : SolverConfig - Relaxation, damping, tolerance and iteration cap
        @parameter initial : ControlTrajectory - Starting strategy, defaults to the box midpoint
        @returns SolveReport - Strategy, state, adjoint, objective and diagnostics.
        """
        cfg = SolverConfig() if cfg is None else cfg
        if atk.n != net.n:
            raise DimensionError(f"Attack covers {atk.n} nodes, network has {net.n}")
        w = net.weights.astype(float)

        u = initial_guess(bounds, params, net.n) if initial is None else initial
        verdict = validate(u, bounds)
        if not verdict.passed:
            raise ValidationError(f"Starting strategy not admissible: {verdict.message}")

        steps = np.full(u.y.shape, cfg.relaxation)
        previous = np.zeros(u.y.shape)
        snap = math.sqrt(cfg.tol) * (bounds.y_hi - bounds.y_lo)
        residual_history = []
        j_history = []
        converged = False
        iterations = range(1, cfg.max_iters + 1)
        if cfg.progress:
            iterations = tqdm(iterations, desc="Sweeping", leave=False)

        iteration = 0
        for iteration in iterations:
            traj = self.integrator.forward(C0, u, net, atk, params)
            adjoint = self.integrator.backward(traj, u, net, atk, params, w)
            j_history.append(objective(traj, u, w, params).j)

            target = characterize_grid(traj, adjoint, net, atk, params, bounds)
            residual_history.append(
                sweep_residual(u, target, traj.values, adjoint.values)
            )
            if residual_history[-1] <= cfg.tol:
                converged = True
                break

            direction = np.sign(target.y - u.y)
            steps = adapt_steps(steps, direction, previous, cfg)
            previous = np.where(direction != 0, direction, previous)
            y = u.y + steps * (target.y - u.y)
            # Entries moving at full step land on their bound once close enough
            settled = (steps >= cfg.relaxation) & (np.abs(target.y - y) <= snap)
            u = ControlTrajectory(
                (1.0 - cfg.relaxation) * u.x + cfg.relaxation * target.x,
                np.where(settled, target.y, y),
            )

        if converged:
            u = ControlTrajectory(target.x, u.y)
        traj = self.integrator.forward(C0, u, net, atk, params)
        adjoint = self.integrator.backward(traj, u, net, atk, params, w)

        breakdown = objective(traj, u, w, params)
        singular = (u.y > bounds.y_lo) & (u.y < bounds.y_hi)
        if converged:
            msg.good(
                f"Converged after {iteration} iterations, J* = {breakdown.j:.6g}, "
                f"{singular.mean():.1%} of recovery entries on the switching surface"
            )
        else:
            msg.warn(
                f"No convergence after {iteration} iterations "
                f"(residual {residual_history[-1]:.3g} > tol {cfg.tol:g})"
            )
        return SolveReport(
            u_star=u,
            c_star=traj,
            lambda_star=adjoint,
            breakdown=breakdown,
            curves=curves(traj, u, w, params),
            iterations=iteration,
            converged=converged,
            residual_history=residual_history,
            j_history=j_history,
            singular_fraction=float(singular.mean()),
        )


def solve(
    net: Network,
    atk: AttackStrategy,
    params: ModelParams,
    bounds: Bounds,
    C0: np.ndarray,
    cfg: SolverConfig = None,
    initial: ControlTrajectory = None,
) -> SolveReport:
    """Solve with the default forward-backward sweep."""
    return ForwardBackwardSweep().solve(net, atk, params, bounds, C0, cfg, initial)
