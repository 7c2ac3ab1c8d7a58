"""Shared fixtures: the exact first-order test plant used across suites."""

from dataclasses import dataclass

import numpy as np
import pytest

from mfcsim.controller import ControllerConfig, SpeedController
from mfcsim.estimator import EstimatorConfig
from mfcsim.vehicle import VehicleParams


@dataclass
class UltraLocalRun:
    t: np.ndarray
    y: np.ndarray
    error: np.ndarray
    alpha: np.ndarray
    u: np.ndarray


def run_ultralocal(
    mode: str,
    lumped: float,
    input_gain: float,
    y0: float,
    y_ref: float,
    kp: float = 2.0,
    alpha_nominal: float = 1.0,
    control_dt: float = 0.01,
    duration: float = 10.0,
    exact_estimate: bool = False,
    torque_limit: float = 1e9,
) -> UltraLocalRun:
    """Close the loop around the exact plant dy/dt = lumped + input_gain*u.

    The command is held over each control period, so the plant integrates
    exactly (the derivative is constant between samples).  With
    ``exact_estimate`` the true lumped term is injected in place of the
    window estimator.
    """
    cfg = ControllerConfig(
        gain_kp=kp,
        alpha_nominal=alpha_nominal,
        mode=mode,
        control_dt=control_dt,
        torque_limit=torque_limit,
    )
    ctrl = SpeedController(cfg, VehicleParams(), EstimatorConfig(sample_dt=control_dt))
    n = int(round(duration / control_dt))
    t = np.arange(n) * control_dt
    y_log = np.empty(n)
    a_log = np.empty(n)
    u_log = np.empty(n)
    y = y0
    for k in range(n):
        if exact_estimate:
            override = lumped
        else:
            override = None if ctrl.ready else 0.0
        cmd = ctrl.step(y, y_ref, 0.0, f_hat_override=override)
        y_log[k] = y
        a_log[k] = cmd.alpha_hat
        u_log[k] = cmd.total_torque
        y = y + (lumped + input_gain * cmd.total_torque) * control_dt
    return UltraLocalRun(t=t, y=y_log, error=y_log - y_ref, alpha=a_log, u=u_log)


@pytest.fixture(scope="session")
def ultralocal():
    return run_ultralocal
