"""Reference-speed profiles and driver-record ingestion.

All profiles are indexed by curvilinear abscissa and expose the reference
speed together with its time derivative (chain rule through the current
path speed).  Recorded driver data arrives as a time series of body speeds
and yaw rate; the waypoint positions and abscissa are rebuilt by dead
reckoning before the speeds can be used as a position-indexed reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "ReferenceProfile",
    "DriverRecord",
    "ReconstructedPath",
    "step_profile",
    "sine_profile",
    "reconstruct_path",
    "driver_profile",
    "moving_average",
    "synthesize_driver_record",
    "write_driver_records",
    "read_driver_records",
    "DRIVER_RECORD_HEADER",
]

DRIVER_RECORD_HEADER = "t,vx,vy,yaw_rate"


@dataclass(frozen=True)
class ReferenceProfile:
    """Lookup from abscissa to (v_ref, v_ref_dot).

    ``query(s, s_dot)`` returns the reference speed [m/s] at abscissa ``s``
    and its time derivative [m/s^2] given the current path speed ``s_dot``.
    Step profiles additionally carry their breakpoints for the metrics.
    """

    kind: str
    query: Callable[[float, float], tuple[float, float]]
    levels: tuple[tuple[float, float], ...] | None = None

    def speed_at(self, s: float) -> float:
        return self.query(s, 0.0)[0]


@dataclass(frozen=True)
class DriverRecord:
    """One sample of recorded vehicle state."""

    t: float          # s
    vx: float         # m/s
    vy: float         # m/s
    yaw_rate: float   # rad/s


@dataclass(frozen=True)
class ReconstructedPath:
    """Waypoints rebuilt from a driver record by dead reckoning."""

    x: np.ndarray
    y: np.ndarray
    psi: np.ndarray
    s: np.ndarray
    v: np.ndarray     # filtered path speed per sample


def step_profile(levels: Sequence[tuple[float, float]]) -> ReferenceProfile:
    """Piecewise-constant speed over abscissa, left-closed at breakpoints.

    ``levels`` is a list of (abscissa, speed) pairs with strictly increasing
    abscissas and non-negative speeds.  Queries before the first breakpoint
    return the first level.
    """
    if not levels:
        raise ValueError("levels must not be empty")
    breaks = [float(b) for b, _ in levels]
    speeds = [float(v) for _, v in levels]
    if any(b2 <= b1 for b1, b2 in zip(breaks, breaks[1:])):
        raise ValueError("breakpoints must be strictly increasing")
    if any(v < 0.0 for v in speeds):
        raise ValueError("speeds must be non-negative")
    breaks_arr = np.asarray(breaks)
    speeds_arr = np.asarray(speeds)

    def query(s: float, s_dot: float) -> tuple[float, float]:
        idx = int(np.searchsorted(breaks_arr, s, side="right")) - 1
        idx = max(idx, 0)
        return float(speeds_arr[idx]), 0.0

    return ReferenceProfile(
        kind="step", query=query, levels=tuple(zip(breaks, speeds))
    )


def sine_profile(mean: float, amplitude: float, wavelength: float) -> ReferenceProfile:
    """Sinusoid in abscissa: v(s) = mean + amplitude*sin(2*pi*s/wavelength).

    The time derivative follows by the chain rule through the current path
    speed.  Requires 0 <= amplitude < mean so the reference stays positive.
    """
    if wavelength <= 0.0:
        raise ValueError("wavelength must be positive")
    if amplitude < 0.0:
        raise ValueError("amplitude must be non-negative")
    if amplitude >= mean:
        raise ValueError("amplitude must be smaller than the mean speed")
    k = 2.0 * math.pi / wavelength

    def query(s: float, s_dot: float) -> tuple[float, float]:
        return (
            mean + amplitude * math.sin(k * s),
            amplitude * k * math.cos(k * s) * s_dot,
        )

    return ReferenceProfile(kind="sine", query=query)


def moving_average(values: np.ndarray, width: int) -> np.ndarray:
    """Centered moving average, truncated (not padded) at the edges.

    A constant input is returned unchanged for any width.
    """
    x = np.asarray(values, dtype=float)
    n = x.size
    if width <= 1 or n == 0:
        return x.copy()
    half_lo = (width - 1) // 2
    half_hi = width // 2
    csum = np.concatenate(([0.0], np.cumsum(x)))
    lo = np.maximum(np.arange(n) - half_lo, 0)
    hi = np.minimum(np.arange(n) + half_hi + 1, n)
    return (csum[hi] - csum[lo]) / (hi - lo)


def reconstruct_path(
    records: Sequence[DriverRecord],
    smoothing_points: int = 100,
) -> ReconstructedPath:
    """Dead-reckon waypoints and abscissa from a recorded state history.

    Body speeds are pre-filtered with a centered moving average before
    integration; the abscissa increments are the planar displacement norms,
    so the total path length equals their sum exactly.

    Raises:
        ValueError: on fewer than two records or non-increasing timestamps.
    """
    if len(records) < 2:
        raise ValueError("at least two records are required")
    t = np.array([r.t for r in records])
    if np.any(np.diff(t) <= 0.0):
        raise ValueError("timestamps must be strictly increasing")
    vx = moving_average(np.array([r.vx for r in records]), smoothing_points)
    vy = moving_average(np.array([r.vy for r in records]), smoothing_points)
    wz = np.array([r.yaw_rate for r in records])

    n = len(records)
    x = np.zeros(n)
    y = np.zeros(n)
    psi = np.zeros(n)
    s = np.zeros(n)
    for i in range(n - 1):
        dt = t[i + 1] - t[i]
        cos_p = math.cos(psi[i])
        sin_p = math.sin(psi[i])
        dx = vx[i] * dt * cos_p - vy[i] * dt * sin_p
        dy = vx[i] * dt * sin_p + vy[i] * dt * cos_p
        x[i + 1] = x[i] + dx
        y[i + 1] = y[i] + dy
        psi[i + 1] = psi[i] + dt * wz[i]
        s[i + 1] = s[i] + math.hypot(dx, dy)
    v = np.hypot(vx, vy)
    return ReconstructedPath(x=x, y=y, psi=psi, s=s, v=v)


def driver_profile(
    path: ReconstructedPath,
    derivative_smoothing: int = 51,
) -> ReferenceProfile:
    """Reference from a reconstructed path: linear interpolation over abscissa.

    The speed derivative with respect to abscissa is a smoothed finite
    difference of the samples; queries outside the recorded range clamp to
    the endpoints.
    """
    if path.s.size == 0:
        raise ValueError("path is empty")
    s_knots = path.s
    v_knots = path.v
    # guard repeated abscissas (standstill segments) for the gradient
    ds = np.diff(s_knots)
    if np.any(ds > 0.0):
        safe_s = s_knots + np.arange(s_knots.size) * 1e-9
        dv_ds = moving_average(np.gradient(v_knots, safe_s), derivative_smoothing)
    else:
        dv_ds = np.zeros_like(v_knots)

    def query(s: float, s_dot: float) -> tuple[float, float]:
        v = float(np.interp(s, s_knots, v_knots))
        slope = float(np.interp(s, s_knots, dv_ds))
        return v, slope * s_dot

    return ReferenceProfile(kind="driver", query=query)


def synthesize_driver_record(
    seed: int = 2024,
    n_events: int = 14,
    sample_rate: float = 100.0,
    start_speed: float = 14.0,
    plateau: float = 90.0,
    sharp_ramp: float = 45.0,
    gentle_ramp: float = 75.0,
    low_speed: tuple[float, float] = (9.0, 12.0),
    high_speed: tuple[float, float] = (16.0, 19.0),
    speed_noise_std: float = 0.08,
) -> list[DriverRecord]:
    """Generate a plausible track-style driver recording.

    The drive alternates between high- and low-speed targets, holding each
    for roughly ``plateau`` metres and transitioning over alternately sharp
    and gentle ramps (a driver who sometimes brakes hard and sometimes eases
    off).  The plan is laid out over distance, then integrated into a time
    series with mild measurement noise on the longitudinal speed and a slow
    yaw wander so the path gently curves.  Deterministic for a given seed.
    """
    rng = np.random.default_rng(seed)
    knots_s = [0.0]
    knots_v = [start_speed]
    s = 0.0
    v_prev = start_speed
    go_high = True
    for i in range(n_events):
        s += plateau + rng.uniform(-10.0, 10.0)
        knots_s.append(s)
        knots_v.append(v_prev)
        v_new = rng.uniform(*high_speed) if go_high else rng.uniform(*low_speed)
        go_high = not go_high
        ramp = sharp_ramp if i % 2 == 0 else gentle_ramp
        s += ramp + rng.uniform(-5.0, 5.0)
        knots_s.append(s)
        knots_v.append(v_new)
        v_prev = v_new
    knots_s.append(s + 300.0)
    knots_v.append(v_prev)

    plan_s = np.asarray(knots_s)
    plan_v = np.asarray(knots_v)
    dt = 1.0 / sample_rate
    records: list[DriverRecord] = []
    t = 0.0
    pos = 0.0
    end = float(plan_s[-1]) - 1.0
    while pos < end:
        v = float(np.interp(pos, plan_s, plan_v))
        records.append(
            DriverRecord(
                t=t,
                vx=v + float(rng.normal(0.0, speed_noise_std)),
                vy=0.0,
                yaw_rate=0.02 * math.sin(2.0 * math.pi * t / 40.0),
            )
        )
        pos += v * dt
        t += dt
    return records


def write_driver_records(records: Sequence[DriverRecord], path: str | Path) -> None:
    """Write records as CSV with header ``t,vx,vy,yaw_rate`` (SI units)."""
    lines = [DRIVER_RECORD_HEADER]
    for r in records:
        lines.append(f"{r.t:.6f},{r.vx:.6f},{r.vy:.6f},{r.yaw_rate:.9f}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_driver_records(path: str | Path) -> list[DriverRecord]:
    """Read a driver record CSV written by write_driver_records."""
    text = Path(path).read_text().strip().splitlines()
    if not text or text[0].strip() != DRIVER_RECORD_HEADER:
        raise ValueError(f"driver record must start with header {DRIVER_RECORD_HEADER!r}")
    records = []
    for line in text[1:]:
        parts = line.split(",")
        if len(parts) != 4:
            raise ValueError(f"malformed driver record line: {line!r}")
        t, vx, vy, wz = (float(p) for p in parts)
        records.append(DriverRecord(t=t, vx=vx, vy=vy, yaw_rate=wz))
    return records
