import numpy as np
import pytest
from pydantic import ValidationError as RecordValidationError

from aptdefense.components.control.control import (
    Bounds,
    ControlTrajectory,
    characterize,
    characterize_grid,
    static_baselines,
    static_control,
    switch_counts,
    validate,
)
from aptdefense.components.dynamics.model import (
    AdjointTrajectory,
    AttackStrategy,
    ModelParams,
    StateTrajectory,
)
from aptdefense.components.errors import DimensionError, ValidationError
from aptdefense.components.network.network import Network
from aptdefense.components.solver.fbsm import initial_guess


@pytest.fixture
def bounds():
    return Bounds(x_lo=0.1, x_hi=0.7, y_lo=0.1, y_hi=0.7)


@pytest.fixture
def isolated():
    return Network(np.zeros((3, 3), dtype=int))


def test_bounds_reject_inverted_box():
    with pytest.raises(RecordValidationError):
        Bounds(x_lo=0.5, x_hi=0.3)
    with pytest.raises(RecordValidationError):
        Bounds(y_lo=0.0)
    assert Bounds(x_lo=0.2, x_hi=0.2).x_mid == 0.2


def test_characterize_at_terminal_costate(bounds, isolated):
    x, y = characterize(
        np.array([0.2, 0.5, 0.9]),
        np.zeros(3),
        isolated,
        AttackStrategy.uniform(0.1, 3),
        0.001,
        bounds,
    )
    assert x.tolist() == [0.1, 0.1, 0.1]
    assert y.tolist() == [0.1, 0.1, 0.1]


def test_characterize_clamps_prevention_to_upper_bound(bounds, isolated):
    x, _ = characterize(
        np.zeros(3),
        np.array([4.0, 4.0, 4.0]),
        isolated,
        AttackStrategy.uniform(0.25, 3),
        0.001,
        bounds,
    )
    assert x.tolist() == [0.7, 0.7, 0.7]


def test_characterize_interior_prevention(bounds, isolated):
    x, _ = characterize(
        np.array([0.5, 0.5, 0.5]),
        np.array([0.32, 0.32, 0.32]),
        isolated,
        AttackStrategy.uniform(0.25, 3),
        0.001,
        bounds,
    )
    assert x == pytest.approx([0.2, 0.2, 0.2])


def test_characterize_negative_costate_clamps_to_lower_bound(bounds, isolated):
    x, y = characterize(
        np.array([0.5, 0.5, 0.5]),
        np.array([-2.0, -2.0, -2.0]),
        isolated,
        AttackStrategy.uniform(0.1, 3),
        0.001,
        bounds,
    )
    assert x.tolist() == [0.1, 0.1, 0.1]
    assert y.tolist() == [0.1, 0.1, 0.1]


def test_characterize_recovery_is_bang_bang(bounds, isolated):
    # lambda * C = 1.5, 1.0 (tie) and 0.5
    _, y = characterize(
        np.array([0.5, 0.5, 0.5]),
        np.array([3.0, 2.0, 1.0]),
        isolated,
        AttackStrategy.uniform(0.1, 3),
        0.001,
        bounds,
    )
    assert y.tolist() == [0.7, 0.1, 0.1]


def test_recovery_response_is_monotone(bounds):
    network = Network(np.zeros((200, 200), dtype=int))
    rng = np.random.default_rng(4)
    C = rng.uniform(0.0, 1.0, 200)
    lam = rng.uniform(-1.0, 5.0, 200)
    _, y = characterize(C, lam, network, AttackStrategy.uniform(0.1, 200), 0.001, bounds)
    order = np.argsort(lam * C)
    assert np.all(np.diff(y[order]) >= 0)


def test_characterized_grid_is_admissible(bounds, isolated):
    rng = np.random.default_rng(0)
    traj = StateTrajectory(rng.uniform(0.0, 1.0, (11, 3)))
    costates = rng.uniform(-1.0, 10.0, (11, 3))
    costates[-1] = 0.0
    u = characterize_grid(
        traj,
        AdjointTrajectory(costates),
        isolated,
        AttackStrategy.uniform(0.1, 3),
        ModelParams(steps=10),
        bounds,
    )
    assert u.steps == 10
    assert validate(u, bounds).passed


def test_characterize_grid_needs_shared_grid(bounds, isolated):
    with pytest.raises(DimensionError):
        characterize_grid(
            StateTrajectory(np.zeros((11, 3))),
            AdjointTrajectory(np.zeros((6, 3))),
            isolated,
            AttackStrategy.uniform(0.1, 3),
            ModelParams(steps=10),
            bounds,
        )


def test_static_control(bounds):
    params = ModelParams(horizon=2.0, steps=4)
    lower = static_control(0.1, 0.1, params, 5, bounds)
    assert lower.x.shape == (5, 5)
    assert np.all(lower.x == 0.1) and np.all(lower.y == 0.1)
    mid = static_control(0.4, 0.4, params, 5, bounds)
    assert np.all(mid.x == 0.4) and np.all(mid.y == 0.4)
    with pytest.raises(ValidationError):
        static_control(0.8, 0.1, params, 5, bounds)


def test_static_baselines_are_labelled(bounds):
    baselines = static_baselines(bounds, ModelParams(steps=4), 2)
    assert list(baselines) == ["static-lower", "static-mid", "static-upper"]
    assert baselines["static-mid"].x[0, 0] == pytest.approx(0.4)
    assert baselines["static-upper"].y[-1, -1] == 0.7


def test_validate_reports_first_violation(bounds):
    params = ModelParams(steps=4)
    u = static_control(0.4, 0.4, params, 3, bounds).with_values(2, 1, x=0.05)
    verdict = validate(u, bounds)
    assert not verdict.passed
    assert verdict.location == (2, 1)
    assert "x[2][1]" in verdict.message


def test_validate_single_time_point(bounds):
    u = ControlTrajectory(np.full((1, 2), 0.3), np.full((1, 2), 0.6))
    assert u.steps == 0
    assert validate(u, bounds).passed


def test_initial_guess(bounds):
    guess = initial_guess(bounds, ModelParams(steps=10), 4)
    assert np.allclose(guess.x, 0.4) and np.allclose(guess.y, 0.4)
    assert validate(guess, bounds).passed

    point = Bounds(x_lo=0.2, x_hi=0.2, y_lo=0.3, y_hi=0.3)
    guess = initial_guess(point, ModelParams(steps=10), 4)
    assert np.allclose(guess.x, 0.2) and np.allclose(guess.y, 0.3)
    assert validate(guess, point).passed


def test_switch_counts():
    y = np.array([[0.1, 0.7], [0.7, 0.7], [0.1, 0.7], [0.1, 0.1]])
    u = ControlTrajectory(np.full((4, 2), 0.1), y)
    assert switch_counts(u).tolist() == [2, 1]
