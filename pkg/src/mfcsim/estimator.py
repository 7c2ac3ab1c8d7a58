"""Sliding-window integral estimator of the lumped unmodelled dynamics.

The loop models the output locally as ``dy/dt = F + v`` where ``v`` is the
effective input (the adaptive gain folded into the command).  Over the most
recent window of duration T the lumped term is recovered by

    F = -(6/T^3) * integral_0^T [ (T - 2*tau)*y(tau) + tau*(T - tau)*v(tau) ] dtau

with tau = 0 at the oldest sample.  The first kernel annihilates constants
and extracts the slope of y; the second subtracts the windowed average of v.
Both kernels attenuate zero-mean noise far better than finite differencing.

The integral is evaluated exactly against the piecewise-linear interpolant
of the samples (per-interval Simpson on the polynomial product), so the
estimate is exact for affine y with constant v at any fill level, and
second-order accurate in the sample spacing otherwise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

__all__ = [
    "EstimatorConfig",
    "SignalWindow",
    "InsufficientSamplesError",
    "push_sample",
    "estimate_lumped_dynamics",
]

MIN_SAMPLES = 3


class InsufficientSamplesError(RuntimeError):
    """Raised when the window holds fewer than MIN_SAMPLES samples."""


@dataclass(frozen=True)
class EstimatorConfig:
    """Window duration and sampling period [s]."""

    window: float = 0.2
    sample_dt: float = 0.01

    def __post_init__(self) -> None:
        if self.sample_dt <= 0.0:
            raise ValueError("sample_dt must be positive")
        if self.window < 2.0 * self.sample_dt:
            raise ValueError("window must span at least two sample periods")

    @property
    def capacity(self) -> int:
        """Number of samples held when full: floor(window/sample_dt) + 1."""
        return int(self.window / self.sample_dt + 1e-9) + 1


class SignalWindow:
    """Ring buffer of (output, effective input) pairs, oldest first.

    The effective input stored with an output sample is the one applied over
    the interval that ends at that measurement.
    """

    def __init__(self, capacity: int):
        if capacity < MIN_SAMPLES:
            raise ValueError(f"capacity must be at least {MIN_SAMPLES}")
        self._y: deque[float] = deque(maxlen=capacity)
        self._v: deque[float] = deque(maxlen=capacity)

    @property
    def capacity(self) -> int:
        return self._y.maxlen or 0

    @property
    def fill(self) -> int:
        return len(self._y)

    def push_sample(self, y: float, v: float) -> None:
        """Append a pair, evicting the oldest when full."""
        self._y.append(y)
        self._v.append(v)

    def samples(self) -> tuple[tuple[float, ...], tuple[float, ...]]:
        return tuple(self._y), tuple(self._v)

    def clear(self) -> None:
        self._y.clear()
        self._v.clear()


def push_sample(window: SignalWindow, y: float, v: float) -> SignalWindow:
    """Functional wrapper around SignalWindow.push_sample."""
    window.push_sample(y, v)
    return window


def estimate_lumped_dynamics(window: SignalWindow, cfg: EstimatorConfig) -> float:
    """Evaluate the window filter over the currently filled samples.

    Before the window is full the integral runs over the partial window,
    with the effective duration (fill - 1) * sample_dt.

    Raises:
        InsufficientSamplesError: if fewer than three samples are held.
    """
    n = window.fill
    if n < MIN_SAMPLES:
        raise InsufficientSamplesError(
            f"window holds {n} sample(s); at least {MIN_SAMPLES} required"
        )
    ys, vs = window.samples()
    dt = cfg.sample_dt
    t_eff = (n - 1) * dt

    # Exact integral of the quadratic kernels against the piecewise-linear
    # sample interpolant: Simpson per interval is exact for the cubic product.
    total = 0.0
    for j in range(n - 1):
        t0 = j * dt
        t1 = t0 + dt
        tm = t0 + 0.5 * dt
        y0, y1 = ys[j], ys[j + 1]
        v0, v1 = vs[j], vs[j + 1]
        ym = 0.5 * (y0 + y1)
        vm = 0.5 * (v0 + v1)
        f0 = (t_eff - 2.0 * t0) * y0 + t0 * (t_eff - t0) * v0
        fm = (t_eff - 2.0 * tm) * ym + tm * (t_eff - tm) * vm
        f1 = (t_eff - 2.0 * t1) * y1 + t1 * (t_eff - t1) * v1
        total += (dt / 6.0) * (f0 + 4.0 * fm + f1)
    return -6.0 / t_eff**3 * total
