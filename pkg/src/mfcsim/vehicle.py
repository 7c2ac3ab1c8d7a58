"""Planar 7-DoF vehicle plant with Magic-Formula longitudinal tire forces.

States: longitudinal/lateral speed, yaw rate and angle, four wheel speeds,
planar position and curvilinear abscissa.  Wheel order throughout is
(front-left, front-right, rear-left, rear-right).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "VehicleParams",
    "TireParams",
    "TirePair",
    "VehicleState",
    "WheelTorques",
    "SimulationDiverged",
    "pacejka_force",
    "fit_pacejka",
    "default_tires",
    "slip_ratio",
    "dynamics",
    "integrate_step",
    "integrate_substeps",
]


class SimulationDiverged(RuntimeError):
    """Raised when an integration step produces a non-finite state."""


@dataclass(frozen=True)
class VehicleParams:
    """Physical constants of the plant, SI units."""

    mass_total: float = 1500.0          # kg
    dist_cg_front: float = 1.2          # m, CG to front axle
    dist_cg_rear: float = 1.4           # m, CG to rear axle
    inertia_yaw: float = 2500.0         # kg m^2
    inertia_wheel: float = 1.2          # kg m^2, per wheel
    radius_effective: float = 0.3       # m
    gravity: float = 9.81               # m/s^2
    cornering_stiffness: float = 80000.0  # N/rad, per axle (linear lateral model)

    def __post_init__(self) -> None:
        for name in (
            "mass_total",
            "dist_cg_front",
            "dist_cg_rear",
            "inertia_yaw",
            "inertia_wheel",
            "radius_effective",
            "gravity",
        ):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")

    @property
    def wheelbase(self) -> float:
        return self.dist_cg_front + self.dist_cg_rear

    def static_load_front(self) -> float:
        """Static normal load on one front wheel [N]."""
        return self.mass_total * self.gravity * self.dist_cg_rear / (2.0 * self.wheelbase)

    def static_load_rear(self) -> float:
        """Static normal load on one rear wheel [N]."""
        return self.mass_total * self.gravity * self.dist_cg_front / (2.0 * self.wheelbase)


@dataclass(frozen=True)
class TireParams:
    """Magic-Formula coefficient set for one tire.

    ``peak_force`` is the curve maximum D [N]; ``stiffness_factor`` B,
    ``shape_factor`` C and ``curvature_factor`` E are dimensionless.
    """

    stiffness_factor: float
    shape_factor: float
    peak_force: float
    curvature_factor: float
    slip_regularization_speed: float = 0.5  # m/s, low-speed denominator floor

    def __post_init__(self) -> None:
        if self.stiffness_factor <= 0.0:
            raise ValueError("stiffness_factor must be positive")
        if not 0.0 < self.shape_factor <= 2.0:
            raise ValueError("shape_factor must lie in (0, 2]")
        if self.peak_force <= 0.0:
            raise ValueError("peak_force must be positive")
        if self.slip_regularization_speed <= 0.0:
            raise ValueError("slip_regularization_speed must be positive")

    @property
    def asymptotic_force(self) -> float:
        """Large-slip limit of the curve, |y_s| <= peak_force."""
        return self.peak_force * math.sin(self.shape_factor * math.pi / 2.0)


@dataclass(frozen=True)
class TirePair:
    """Per-axle tire parameter sets (both wheels of an axle share one set)."""

    front: TireParams
    rear: TireParams


@dataclass(frozen=True)
class VehicleState:
    """Continuous plant state (also used as the container for its derivative)."""

    vx: float = 0.0                 # m/s, longitudinal speed
    vy: float = 0.0                 # m/s, lateral speed
    yaw_rate: float = 0.0           # rad/s
    yaw: float = 0.0                # rad
    omega: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)  # rad/s
    x: float = 0.0                  # m
    y: float = 0.0                  # m
    s: float = 0.0                  # m, curvilinear abscissa

    def is_finite(self) -> bool:
        return all(
            math.isfinite(v)
            for v in (self.vx, self.vy, self.yaw_rate, self.yaw, *self.omega, self.x, self.y, self.s)
        )

    @classmethod
    def rolling(cls, speed: float, veh: VehicleParams) -> "VehicleState":
        """State at steady straight-line rolling (zero slip) at ``speed``."""
        w = speed / veh.radius_effective
        return cls(vx=speed, omega=(w, w, w, w))


@dataclass(frozen=True)
class WheelTorques:
    """Motor and brake torque per wheel [N m]; brakes only dissipate."""

    motor: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    brake: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        if any(b < 0.0 for b in self.brake):
            raise ValueError("brake torques must be non-negative")

    def net(self) -> tuple[float, float, float, float]:
        return tuple(m - b for m, b in zip(self.motor, self.brake))


def pacejka_force(slip_ratio: float, tire: TireParams) -> float:
    """Longitudinal tire force [N] from the Magic Formula.

    D*sin(C*atan(B*tau - E*(B*tau - atan(B*tau)))).  Odd in the slip ratio
    and bounded by +-D.  Intended domain is [-1, 1] but the expression is
    total, which the fit round-trip exploits to probe the asymptote.
    """
    b_tau = tire.stiffness_factor * slip_ratio
    arg = b_tau - tire.curvature_factor * (b_tau - math.atan(b_tau))
    return tire.peak_force * math.sin(tire.shape_factor * math.atan(arg))


def fit_pacejka(
    peak: float,
    asymptote: float,
    initial_slope: float,
    peak_slip: float,
    slip_regularization_speed: float = 0.5,
) -> TireParams:
    """Fit B, C, D, E from the four classical curve features.

    ``peak`` is the curve maximum [N], ``asymptote`` the large-slip value
    [N], ``initial_slope`` the slope at zero slip [N per unit slip] and
    ``peak_slip`` the slip ratio at which the maximum is reached.

    Raises:
        ValueError: if the asymptote exceeds the peak (arcsine domain), or
            any feature is non-positive.
    """
    if peak <= 0.0:
        raise ValueError("peak must be positive")
    if not 0.0 < abs(asymptote) <= peak:
        raise ValueError("asymptote must satisfy 0 < |asymptote| <= peak")
    if initial_slope <= 0.0:
        raise ValueError("initial_slope must be positive")
    if peak_slip <= 0.0:
        raise ValueError("peak_slip must be positive")

    d = peak
    c = 2.0 - (2.0 / math.pi) * math.asin(asymptote / d)
    b = initial_slope / (c * d)
    # C -> 1 as asymptote -> peak: the curve has no interior maximum and the
    # curvature term loses meaning; fall back to E = 0 (pure atan shape).
    if c <= 1.0 + 1e-12:
        e = 0.0
    else:
        b_tau_m = b * peak_slip
        e = (b_tau_m - math.tan(math.pi / (2.0 * c))) / (b_tau_m - math.atan(b_tau_m))
    return TireParams(
        stiffness_factor=b,
        shape_factor=c,
        peak_force=d,
        curvature_factor=e,
        slip_regularization_speed=slip_regularization_speed,
    )


def default_tires(
    veh: VehicleParams,
    peak_scale: float = 0.9,
    asymptote_scale: float = 0.75,
    slope_scale: float = 15.0,
    peak_slip: float = 0.15,
    slip_regularization_speed: float = 0.5,
) -> TirePair:
    """Per-axle tire sets whose peak D scales with the static wheel load.

    The scales are dry-asphalt-shaped multiples of the per-wheel static
    normal load F_z (peak 0.9 F_z, asymptote 0.75 F_z, slope 15 F_z).
    """
    pairs = []
    for fz in (veh.static_load_front(), veh.static_load_rear()):
        pairs.append(
            fit_pacejka(
                peak=peak_scale * fz,
                asymptote=asymptote_scale * fz,
                initial_slope=slope_scale * fz,
                peak_slip=peak_slip,
                slip_regularization_speed=slip_regularization_speed,
            )
        )
    return TirePair(front=pairs[0], rear=pairs[1])


def slip_ratio(
    wheel_speed: float,
    v_long: float,
    radius_effective: float,
    regularization: float = 0.5,
) -> float:
    """Longitudinal slip ratio, saturated to [-1, 1].

    Propulsion (r*w >= Vx) normalizes by the wheel circumferential speed,
    braking by the vehicle speed; both denominators are floored at
    ``regularization`` [m/s] to stay total at standstill.
    """
    circumferential = radius_effective * wheel_speed
    if circumferential >= v_long:
        denom = max(abs(circumferential), regularization)
    else:
        denom = max(abs(v_long), regularization)
    tau = (circumferential - v_long) / denom
    return min(1.0, max(-1.0, tau))


def _state_tuple(state: VehicleState) -> tuple[float, ...]:
    """Flatten to the 11-component layout used by the integrator fast path."""
    return (
        state.vx,
        state.vy,
        state.yaw_rate,
        state.yaw,
        *state.omega,
        state.x,
        state.y,
        state.s,
    )


def _deriv(
    st: tuple[float, ...],
    net_torques: tuple[float, float, float, float],
    veh: VehicleParams,
    tires: TirePair,
    steer: float,
) -> tuple[float, ...]:
    """Time derivative of the 11-component state tuple."""
    vx, vy, wz, yaw = st[0], st[1], st[2], st[3]
    omega = st[4:8]

    # per-wheel longitudinal tire force in the tire frame
    fx = []
    for i in range(4):
        tire = tires.front if i < 2 else tires.rear
        tau = slip_ratio(
            omega[i], vx, veh.radius_effective, tire.slip_regularization_speed
        )
        fx.append(pacejka_force(tau, tire))

    # lateral: linear in slip angle, only to keep the planar equations
    # well-posed; zero on the straight-line scenarios
    if vx > 0.5:
        alpha_f = steer - math.atan((vy + veh.dist_cg_front * wz) / vx)
        alpha_r = -math.atan((vy - veh.dist_cg_rear * wz) / vx)
    else:
        alpha_f = alpha_r = 0.0
    fyp_f = veh.cornering_stiffness * alpha_f
    fyp_r = veh.cornering_stiffness * alpha_r

    # axle forces in the vehicle frame; front wheels rotate by the steer angle
    fxp_f = fx[0] + fx[1]
    cos_d, sin_d = math.cos(steer), math.sin(steer)
    fxf = fxp_f * cos_d - fyp_f * sin_d
    fyf = fxp_f * sin_d + fyp_f * cos_d
    fxr = fx[2] + fx[3]
    fyr = fyp_r

    m = veh.mass_total
    dvx = wz * vy + (fxf + fxr) / m
    dvy = -wz * vx + (fyf + fyr) / m
    dwz = (veh.dist_cg_front * fyf - veh.dist_cg_rear * fyr) / veh.inertia_yaw

    inv_iw = 1.0 / veh.inertia_wheel
    r = veh.radius_effective
    dw = tuple((net_torques[i] - fx[i] * r) * inv_iw for i in range(4))

    cos_y, sin_y = math.cos(yaw), math.sin(yaw)
    return (
        dvx,
        dvy,
        dwz,
        wz,
        dw[0],
        dw[1],
        dw[2],
        dw[3],
        vx * cos_y - vy * sin_y,
        vx * sin_y + vy * cos_y,
        math.hypot(vx, vy),
    )


def dynamics(
    state: VehicleState,
    torques: WheelTorques,
    veh: VehicleParams,
    tires: TirePair,
    steer: float = 0.0,
) -> VehicleState:
    """Evaluate the plant's state derivative (returned in a VehicleState)."""
    d = _deriv(_state_tuple(state), torques.net(), veh, tires, steer)
    return VehicleState(
        vx=d[0],
        vy=d[1],
        yaw_rate=d[2],
        yaw=d[3],
        omega=(d[4], d[5], d[6], d[7]),
        x=d[8],
        y=d[9],
        s=d[10],
    )


def integrate_step(
    state: VehicleState,
    torques: WheelTorques,
    dt: float,
    veh: VehicleParams,
    tires: TirePair,
    steer: float = 0.0,
) -> VehicleState:
    """Advance the plant one fixed step with classical RK4.

    Torques are held constant across the step (zero-order hold).

    Raises:
        ValueError: if ``dt`` is not positive.
        SimulationDiverged: if the resulting state is non-finite.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    net = torques.net()
    st = _state_tuple(state)
    k1 = _deriv(st, net, veh, tires, steer)
    half = 0.5 * dt
    s2 = tuple(a + half * b for a, b in zip(st, k1))
    k2 = _deriv(s2, net, veh, tires, steer)
    s3 = tuple(a + half * b for a, b in zip(st, k2))
    k3 = _deriv(s3, net, veh, tires, steer)
    s4 = tuple(a + dt * b for a, b in zip(st, k3))
    k4 = _deriv(s4, net, veh, tires, steer)
    sixth = dt / 6.0
    out = tuple(
        a + sixth * (b + 2.0 * c + 2.0 * d + e)
        for a, b, c, d, e in zip(st, k1, k2, k3, k4)
    )
    new = VehicleState(
        vx=out[0],
        vy=out[1],
        yaw_rate=out[2],
        yaw=out[3],
        omega=(out[4], out[5], out[6], out[7]),
        x=out[8],
        y=out[9],
        s=out[10],
    )
    if not new.is_finite():
        raise SimulationDiverged("vehicle state became non-finite")
    return new


def integrate_substeps(
    state: VehicleState,
    torques: WheelTorques,
    dt: float,
    n_steps: int,
    veh: VehicleParams,
    tires: TirePair,
    steer: float = 0.0,
) -> VehicleState:
    """RK4-advance ``n_steps`` substeps under held torques (harness fast path).

    Equivalent to calling integrate_step ``n_steps`` times; the divergence
    check runs once at the end (non-finite values propagate).
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    net = torques.net()
    st = _state_tuple(state)
    half = 0.5 * dt
    sixth = dt / 6.0
    for _ in range(n_steps):
        k1 = _deriv(st, net, veh, tires, steer)
        s2 = tuple(a + half * b for a, b in zip(st, k1))
        k2 = _deriv(s2, net, veh, tires, steer)
        s3 = tuple(a + half * b for a, b in zip(st, k2))
        k3 = _deriv(s3, net, veh, tires, steer)
        s4 = tuple(a + dt * b for a, b in zip(st, k3))
        k4 = _deriv(s4, net, veh, tires, steer)
        st = tuple(
            a + sixth * (b + 2.0 * c + 2.0 * d + e)
            for a, b, c, d, e in zip(st, k1, k2, k3, k4)
        )
    new = VehicleState(
        vx=st[0],
        vy=st[1],
        yaw_rate=st[2],
        yaw=st[3],
        omega=(st[4], st[5], st[6], st[7]),
        x=st[8],
        y=st[9],
        s=st[10],
    )
    if not new.is_finite():
        raise SimulationDiverged("vehicle state became non-finite")
    return new
