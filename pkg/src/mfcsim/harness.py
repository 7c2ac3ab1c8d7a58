"""Closed-loop executive: plant, sensor noise, actuation delay, logging.

One run wires a reference profile, the speed controller and the 7-DoF plant
into a deterministic seeded loop.  The controller runs at its own period
with zero-order hold; the plant integrates at a finer fixed step.  Sensor
noise applies only to the measured speed fed to the controller; the log
keeps both the true and the measured speed.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .controller import ControllerConfig, SpeedController
from .estimator import EstimatorConfig
from .scenario import ReferenceProfile
from .vehicle import (
    TirePair,
    VehicleParams,
    VehicleState,
    WheelTorques,
    default_tires,
    integrate_substeps,
)

__all__ = [
    "RunConfig",
    "LogRecord",
    "RunTrace",
    "DelayLine",
    "add_noise",
    "run",
    "write_trace_csv",
    "read_trace_csv",
    "TRACE_HEADER",
    "DEFAULT_NOISE_STD",
]

# -6 dB noise power re 1 (m/s)^2: sigma = 10**(-6/20)
DEFAULT_NOISE_STD = 10.0 ** (-6.0 / 20.0)

TRACE_HEADER = (
    "t,s,v_ref,v_true,v_meas,error,f_hat,alpha_hat,"
    "u_total,u_applied,tq_fl,tq_fr,tq_rl,tq_rr"
)


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one closed-loop run."""

    profile: ReferenceProfile
    controller: ControllerConfig = ControllerConfig()
    vehicle: VehicleParams = VehicleParams()
    tires: TirePair | None = None
    noise_enabled: bool = True
    noise_std: float = DEFAULT_NOISE_STD
    actuation_delay: float = 0.0        # s
    duration: float | None = None       # s; exactly one of duration/distance
    distance: float | None = None       # m
    seed: int = 42
    plant_dt: float = 0.001             # s
    initial_speed: float | None = None  # defaults to the profile speed at s=0
    estimator_window: float = 0.2       # s

    def __post_init__(self) -> None:
        if (self.duration is None) == (self.distance is None):
            raise ValueError("exactly one of duration or distance must be set")
        if self.duration is not None and self.duration <= 0.0:
            raise ValueError("duration must be positive")
        if self.distance is not None and self.distance <= 0.0:
            raise ValueError("distance must be positive")
        if self.actuation_delay < 0.0:
            raise ValueError("actuation_delay must be non-negative")
        if self.noise_std < 0.0:
            raise ValueError("noise_std must be non-negative")
        dt = self.controller.control_dt
        if self.plant_dt > dt + 1e-15:
            raise ValueError("plant_dt must not exceed the control period")
        ratio = dt / self.plant_dt
        if abs(ratio - round(ratio)) > 1e-9:
            raise ValueError("control period must be an integer multiple of plant_dt")

    @property
    def substeps(self) -> int:
        return int(round(self.controller.control_dt / self.plant_dt))

    @property
    def delay_steps(self) -> int:
        return int(round(self.actuation_delay / self.controller.control_dt))


@dataclass(frozen=True)
class LogRecord:
    """One control step of the closed loop."""

    t: float
    s: float
    v_ref: float
    v_true: float
    v_meas: float
    error: float          # v_meas - v_ref (the error the controller acted on)
    f_hat: float
    alpha_hat: float
    u_total: float        # commanded this step
    u_applied: float      # applied to the plant this step (after the delay line)
    tq_fl: float
    tq_fr: float
    tq_rl: float
    tq_rr: float


@dataclass
class RunTrace:
    """Ordered log records plus the configuration that produced them."""

    records: list[LogRecord] = field(default_factory=list)
    config: RunConfig | None = None

    def __len__(self) -> int:
        return len(self.records)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records])

    def error_true(self) -> np.ndarray:
        """Ground-truth tracking error v_true - v_ref."""
        return self.column("v_true") - self.column("v_ref")

    def error_measured(self) -> np.ndarray:
        return self.column("error")


class DelayLine:
    """Fixed-depth FIFO for actuation commands; depth zero is the identity."""

    def __init__(self, depth: int, initial: WheelTorques | None = None):
        if depth < 0:
            raise ValueError("depth must be non-negative")
        fill = initial if initial is not None else WheelTorques()
        self._fifo: deque[tuple[float, WheelTorques]] = deque(
            (0.0, fill) for _ in range(depth)
        )

    def shift(self, total: float, torques: WheelTorques) -> tuple[float, WheelTorques]:
        """Push this step's command, pop the one due for application."""
        self._fifo.append((total, torques))
        return self._fifo.popleft()


def add_noise(value: float, rng: np.random.Generator, std: float) -> float:
    """Additive zero-mean Gaussian measurement noise from the seeded stream."""
    return value + float(rng.normal(0.0, std))


def run(config: RunConfig) -> RunTrace:
    """Execute one closed-loop run; deterministic for a given config+seed.

    Raises:
        SimulationDiverged: if the plant state becomes non-finite.
    """
    rng = np.random.default_rng(config.seed)
    veh = config.vehicle
    tires = config.tires if config.tires is not None else default_tires(veh)
    ctrl = SpeedController(
        config.controller,
        veh,
        EstimatorConfig(
            window=config.estimator_window,
            sample_dt=config.controller.control_dt,
        ),
    )
    delay = DelayLine(config.delay_steps)

    v0 = (
        config.initial_speed
        if config.initial_speed is not None
        else config.profile.query(0.0, 0.0)[0]
    )
    state = VehicleState.rolling(v0, veh)

    dt = config.controller.control_dt
    substeps = config.substeps
    # hard cap so a distance-terminated run cannot loop forever on a stall
    if config.duration is not None:
        max_steps = int(round(config.duration / dt))
    else:
        max_steps = int(config.distance / (0.05 * dt)) + 1

    trace = RunTrace(config=config)
    t = 0.0
    for k in range(max_steps):
        if config.distance is not None and state.s >= config.distance:
            break
        v_true = state.vx
        v_meas = (
            add_noise(v_true, rng, config.noise_std)
            if config.noise_enabled
            else v_true
        )
        path_speed = math.hypot(state.vx, state.vy)
        v_ref, v_ref_dot = config.profile.query(state.s, path_speed)

        # the estimator needs three samples; substitute zero until then
        override = None if ctrl.ready else 0.0
        cmd = ctrl.step(v_meas, v_ref, v_ref_dot, f_hat_override=override)

        u_applied, applied_torques = delay.shift(cmd.total_torque, cmd.per_wheel)
        net = applied_torques.net()
        trace.records.append(
            LogRecord(
                t=t,
                s=state.s,
                v_ref=v_ref,
                v_true=v_true,
                v_meas=v_meas,
                error=v_meas - v_ref,
                f_hat=cmd.f_hat,
                alpha_hat=cmd.alpha_hat,
                u_total=cmd.total_torque,
                u_applied=u_applied,
                tq_fl=net[0],
                tq_fr=net[1],
                tq_rl=net[2],
                tq_rr=net[3],
            )
        )
        state = integrate_substeps(
            state, applied_torques, config.plant_dt, substeps, veh, tires
        )
        t += dt
    return trace


def write_trace_csv(trace: RunTrace, path: str | Path) -> None:
    """Write the trace with the canonical header, fixed decimal formatting."""
    lines = [TRACE_HEADER]
    for r in trace.records:
        lines.append(
            f"{r.t:.6f},{r.s:.6f},{r.v_ref:.9f},{r.v_true:.9f},{r.v_meas:.9f},"
            f"{r.error:.9f},{r.f_hat:.9f},{r.alpha_hat:.9f},{r.u_total:.9f},"
            f"{r.u_applied:.9f},{r.tq_fl:.9f},{r.tq_fr:.9f},{r.tq_rl:.9f},{r.tq_rr:.9f}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def read_trace_csv(path: str | Path) -> RunTrace:
    """Read a trace CSV back into a RunTrace (config not recovered)."""
    lines = Path(path).read_text().strip().splitlines()
    if not lines or lines[0].strip() != TRACE_HEADER:
        raise ValueError(f"trace must start with header {TRACE_HEADER!r}")
    records = []
    for line in lines[1:]:
        vals = [float(p) for p in line.split(",")]
        if len(vals) != 14:
            raise ValueError(f"malformed trace line: {line!r}")
        records.append(LogRecord(*vals))
    return RunTrace(records=records)
