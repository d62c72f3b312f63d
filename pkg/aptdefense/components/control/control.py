from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from aptdefense.components.dynamics.model import (
    AdjointTrajectory,
    AttackStrategy,
    ModelParams,
    StateTrajectory,
    pressure,
)
from aptdefense.components.errors import DimensionError, ValidationError
from aptdefense.components.network.network import Network


class Bounds(BaseModel):
    """Box of admissible prevention (x) and recovery (y) cost rates."""

    model_config = ConfigDict(frozen=True)

    x_lo: float = 0.1
    x_hi: float = 0.7
    y_lo: float = 0.1
    y_hi: float = 0.7

    @model_validator(mode="after")
    def check_box(self):
        if not 0 < self.x_lo <= self.x_hi:
            raise ValueError(f"Need 0 < x_lo <= x_hi, got ({self.x_lo}, {self.x_hi})")
        if not 0 < self.y_lo <= self.y_hi:
            raise ValueError(f"Need 0 < y_lo <= y_hi, got ({self.y_lo}, {self.y_hi})")
        return self

    @property
    def x_mid(self) -> float:
        return (self.x_lo + self.x_hi) / 2

    @property
    def y_mid(self) -> float:
        return (self.y_lo + self.y_hi) / 2

    @property
    def largest(self) -> float:
        return max(self.x_hi, self.y_hi)


class ControlTrajectory:
    """Defense strategy u = (x, y) on the grid, both of shape (M+1) x N."""

    def __init__(self, x: np.ndarray, y: np.ndarray):
        x = np.array(x, dtype=float)
        y = np.array(y, dtype=float)
        if x.ndim != 2 or x.shape != y.shape:
            raise DimensionError(
                f"x and y must share an (M+1) x N grid, got {x.shape} and {y.shape}"
            )
        x.setflags(write=False)
        y.setflags(write=False)
        self._x = x
        self._y = y

    @property
    def x(self) -> np.ndarray:
        return self._x

    @property
    def y(self) -> np.ndarray:
        return self._y

    @property
    def steps(self) -> int:
        return self._x.shape[0] - 1

    @property
    def n(self) -> int:
        return self._x.shape[1]

    def same_grid(self, other) -> bool:
        return self.steps == other.steps and self.n == other.n

    def with_values(self, k: int, i: int, x: float = None, y: float = None):
        """Copy of the trajectory with one grid entry replaced."""
        new_x, new_y = self._x.copy(), self._y.copy()
        if x is not None:
            new_x[k, i] = x
        if y is not None:
            new_y[k, i] = y
        return ControlTrajectory(new_x, new_y)


class AdmissibilityVerdict(NamedTuple):
    passed: bool
    location: tuple[int, int] | None
    message: str


def characterize(
    C: np.ndarray,
    lam: np.ndarray,
    net: Network,
    atk: AttackStrategy,
    beta: float,
    bounds: Bounds,
) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise minimizer of the Hamiltonian over the admissible box.

    x_i = clamp(sqrt(max(0, lambda_i [a_i + beta sum_j a_ji C_j](1 - C_i))), x_lo, x_hi)
    y_i = y_hi if lambda_i C_i > 1 else y_lo

    A negative radicand clamps x_i to x_lo and the tie lambda_i C_i = 1 picks y_lo.
    Works on vectors (one grid point) and on whole (M+1) x N grids.

    @parameter C : np.ndarray - Expected state
    @parameter lam : np.ndarray - Costate
    @parameter net : Network - Access network
    @parameter atk : AttackStrategy - Attack rates
    @parameter beta : float - Infection force
    @parameter bounds : Bounds - Admissible box
    @returns tuple[np.ndarray, np.ndarray] - Prevention and recovery rates.
    """
    radicand = np.maximum(0.0, lam * pressure(C, net, atk, beta) * (1.0 - C))
    x = np.clip(np.sqrt(radicand), bounds.x_lo, bounds.x_hi)
    y = np.where(lam * C > 1.0, bounds.y_hi, bounds.y_lo)
    return x, y


def characterize_grid(
    traj: StateTrajectory,
    adjoint: AdjointTrajectory,
    net: Network,
    atk: AttackStrategy,
    params: ModelParams,
    bounds: Bounds,
) -> ControlTrajectory:
    if not traj.same_grid(adjoint):
        raise DimensionError("State and adjoint trajectories live on different grids")
    x, y = characterize(traj.values, adjoint.values, net, atk, params.beta, bounds)
    return ControlTrajectory(x, y)


def static_control(
    x_level: float,
    y_level: float,
    params: ModelParams,
    n: int,
    bounds: Bounds = None,
) -> ControlTrajectory:
    """Constant-in-time, uniform-across-nodes strategy
    @parameter x_level : float - Prevention rate
    @parameter y_level : float - Recovery rate
    @parameter params : ModelParams - Grid
    @parameter n : int - Number of nodes
    @parameter bounds : Bounds - Admissible box the levels must respect
    @returns ControlTrajectory - The static strategy.
    """
    if x_level <= 0 or y_level <= 0:
        raise ValidationError(f"Static levels must be positive, got ({x_level}, {y_level})")
    if bounds is not None:
        if not bounds.x_lo <= x_level <= bounds.x_hi:
            raise ValidationError(
                f"x level {x_level} outside [{bounds.x_lo}, {bounds.x_hi}]"
            )
        if not bounds.y_lo <= y_level <= bounds.y_hi:
            raise ValidationError(
                f"y level {y_level} outside [{bounds.y_lo}, {bounds.y_hi}]"
            )
    shape = (params.steps + 1, n)
    return ControlTrajectory(np.full(shape, x_level), np.full(shape, y_level))


def static_baselines(
    bounds: Bounds, params: ModelParams, n: int
) -> dict[str, ControlTrajectory]:
    """The three labelled static strategies: both lower bounds, midpoints, both upper bounds."""
    return {
        "static-lower": static_control(bounds.x_lo, bounds.y_lo, params, n, bounds),
        "static-mid": static_control(bounds.x_mid, bounds.y_mid, params, n, bounds),
        "static-upper": static_control(bounds.x_hi, bounds.y_hi, params, n, bounds),
    }


def validate(u: ControlTrajectory, bounds: Bounds) -> AdmissibilityVerdict:
    """Check a strategy against the admissible box
    @parameter u : ControlTrajectory - Strategy to check
    @parameter bounds : Bounds - Admissible box
    @returns AdmissibilityVerdict - Verdict with the first violating (k, i) in row-major order.
    """
    bad_x = (u.x < bounds.x_lo) | (u.x > bounds.x_hi)
    bad_y = (u.y < bounds.y_lo) | (u.y > bounds.y_hi)
    bad = bad_x | bad_y
    if not bad.any():
        return AdmissibilityVerdict(True, None, "Admissible")
    k, i = np.unravel_index(int(np.argmax(bad)), bad.shape)
    k, i = int(k), int(i)
    if bad_x[k, i]:
        value, name = u.x[k, i], "x"
    else:
        value, name = u.y[k, i], "y"
    return AdmissibilityVerdict(
        False, (k, i), f"{name}[{k}][{i}] = {value:g} outside admissible bounds"
    )


def switch_counts(u: ControlTrajectory) -> np.ndarray:
    """Per-node number of changes of the recovery rate between grid points."""
    return np.count_nonzero(np.diff(u.y, axis=0) != 0, axis=0)
