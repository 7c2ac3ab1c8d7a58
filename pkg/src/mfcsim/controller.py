"""Model-free longitudinal speed controller with optional adaptive gain.

The control law is the intelligent-proportional (iP) form

    u = -(F_hat - dy_ref/dt + K_P * e) / alpha

where ``F_hat`` is the window estimate of the lumped dynamics and ``e`` the
tracking error.  In adaptive mode the input gain ``alpha`` becomes a
time-varying estimate, updated after each command so the law would null the
error if the estimate were exact, and clamped from below at its nominal
value to avoid singular or non-positive gains.

Per control step, in order: the newest output sample is paired with the
previous step's effective input and pushed into the window; the lumped
dynamics are estimated with the gain folded into the stored input; the
command is computed with the previous gain estimate; the gain estimate is
updated from that command; the command is split across wheels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .estimator import EstimatorConfig, SignalWindow, estimate_lumped_dynamics
from .vehicle import VehicleParams, WheelTorques

__all__ = [
    "ControllerConfig",
    "ControllerState",
    "ControlCommand",
    "ip_control",
    "update_alpha",
    "split_torque",
    "SpeedController",
]


@dataclass(frozen=True)
class ControllerConfig:
    """Gains and limits of the speed loop."""

    gain_kp: float = 10.0               # 1/s
    alpha_nominal: float = 0.02         # (m/s^2) per (N m)
    epsilon: float = 0.01               # N m, divisor floor in the gain update
    mode: str = "classic"               # "classic" or "adaptive"
    torque_limit: float = 2000.0        # N m, symmetric clamp on the total command
    control_dt: float = 0.01            # s

    def __post_init__(self) -> None:
        if self.gain_kp <= 0.0:
            raise ValueError("gain_kp must be positive")
        if self.alpha_nominal <= 0.0:
            raise ValueError("alpha_nominal must be positive")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if self.torque_limit <= 0.0:
            raise ValueError("torque_limit must be positive")
        if self.control_dt <= 0.0:
            raise ValueError("control_dt must be positive")
        if self.mode not in ("classic", "adaptive"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class ControllerState:
    """Mutable per-loop state: current gain estimate and last command."""

    alpha_hat: float
    last_u: float = 0.0
    last_effective_input: float = 0.0   # alpha_hat * u from the previous step


@dataclass(frozen=True)
class ControlCommand:
    """Total wheel torque plus its per-wheel split."""

    total_torque: float
    per_wheel: WheelTorques
    f_hat: float
    alpha_hat: float


def ip_control(
    f_hat: float,
    y_ref_dot: float,
    error: float,
    alpha: float,
    cfg: ControllerConfig,
) -> float:
    """iP law: cancel the estimated dynamics, add proportional feedback.

    The result is clamped to [-torque_limit, +torque_limit].
    """
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    u = -(f_hat - y_ref_dot + cfg.gain_kp * error) / alpha
    return min(cfg.torque_limit, max(-cfg.torque_limit, u))


def update_alpha(
    f_hat: float,
    y_ref_dot: float,
    u: float,
    cfg: ControllerConfig,
) -> float:
    """Time-varying gain update, clamped below at alpha_nominal.

    alpha = max((-F_hat + dy_ref/dt) / (u + eps*sign(u)), alpha_nominal)
    with sign(0) = +1, so the divisor never vanishes.
    """
    sign_u = 1.0 if u >= 0.0 else -1.0
    candidate = (-f_hat + y_ref_dot) / (u + cfg.epsilon * sign_u)
    return max(candidate, cfg.alpha_nominal)


def split_torque(total: float, veh: VehicleParams) -> WheelTorques:
    """Distribute the total command: front-axle drive, all-wheel braking.

    Positive totals become motor torque, half on each front wheel; negative
    totals become brake torque, a quarter on each wheel.
    """
    if total >= 0.0:
        half = 0.5 * total
        return WheelTorques(motor=(half, half, 0.0, 0.0))
    quarter = 0.25 * (-total)
    return WheelTorques(brake=(quarter, quarter, quarter, quarter))


class SpeedController:
    """One closed-loop instance: owns its gain state and signal window."""

    def __init__(
        self,
        cfg: ControllerConfig,
        veh: VehicleParams,
        est_cfg: EstimatorConfig | None = None,
    ):
        if est_cfg is None:
            est_cfg = EstimatorConfig(sample_dt=cfg.control_dt)
        if abs(est_cfg.sample_dt - cfg.control_dt) > 1e-12:
            raise ValueError("estimator sample_dt must equal the control period")
        self.cfg = cfg
        self.veh = veh
        self.est_cfg = est_cfg
        self.window = SignalWindow(est_cfg.capacity)
        self.state = ControllerState(alpha_hat=cfg.alpha_nominal)

    @property
    def ready(self) -> bool:
        """True once this step's push will give the estimator enough samples."""
        return self.window.fill + 1 >= 3

    def reset(self) -> None:
        self.window.clear()
        self.state = ControllerState(alpha_hat=self.cfg.alpha_nominal)

    def step(
        self,
        y_meas: float,
        y_ref: float,
        y_ref_dot: float,
        f_hat_override: float | None = None,
    ) -> ControlCommand:
        """Run one control period and emit the torque command.

        ``f_hat_override`` replaces the window estimate (used by the harness
        to substitute zero during warm-up, and by tests to inject an exact
        value).  Without it, a not-yet-filled window raises
        InsufficientSamplesError from the estimator.
        """
        st = self.state
        cfg = self.cfg
        # pair the fresh measurement with the input applied over the
        # interval that ends at it
        self.window.push_sample(y_meas, st.last_effective_input)

        if f_hat_override is not None:
            f_hat = f_hat_override
        else:
            f_hat = estimate_lumped_dynamics(self.window, self.est_cfg)

        error = y_meas - y_ref
        u = ip_control(f_hat, y_ref_dot, error, st.alpha_hat, cfg)

        if cfg.mode == "adaptive":
            alpha = update_alpha(f_hat, y_ref_dot, u, cfg)
        else:
            alpha = cfg.alpha_nominal

        st.alpha_hat = alpha
        st.last_u = u
        st.last_effective_input = alpha * u

        return ControlCommand(
            total_torque=u,
            per_wheel=split_torque(u, self.veh),
            f_hat=f_hat,
            alpha_hat=alpha,
        )
