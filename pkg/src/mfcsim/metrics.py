"""Post-run statistics: error moments, per-step overshoot and settling."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .harness import RunTrace
from .scenario import ReferenceProfile

__all__ = [
    "ErrorStats",
    "StepMetrics",
    "error_stats",
    "step_metrics",
    "write_metrics_csv",
]


@dataclass(frozen=True)
class ErrorStats:
    """Mean, population standard deviation and RMS of a tracking error."""

    mean: float
    std_dev: float
    rms: float


@dataclass(frozen=True)
class StepMetrics:
    """Per-jump response quality of a step scenario."""

    jump_abscissa: float      # m, where the reference jumps
    amplitude: float          # m/s, signed jump size
    overshoot_pct: float      # % of |amplitude|, peak excursion beyond target
    settling_distance: float  # m past the jump until |error| stays in the 2% band;
                              # NaN if the segment never settles


def error_stats(trace: RunTrace, error_source: str = "true") -> ErrorStats:
    """Error moments over a trace.

    ``error_source`` selects the ground-truth error (v_true - v_ref) or the
    measured error column.  Standard deviation is the population form, so
    rms^2 == mean^2 + std_dev^2 exactly.
    """
    if len(trace) == 0:
        raise ValueError("trace is empty")
    if error_source == "true":
        e = trace.error_true()
    elif error_source == "measured":
        e = trace.error_measured()
    else:
        raise ValueError(f"unknown error source {error_source!r}")
    mean = float(np.mean(e))
    std = float(np.std(e))
    rms = float(np.sqrt(np.mean(e * e)))
    return ErrorStats(mean=mean, std_dev=std, rms=rms)


def step_metrics(
    trace: RunTrace,
    profile: ReferenceProfile,
    band_fraction: float = 0.02,
) -> list[StepMetrics]:
    """Overshoot and settling for each jump of a step profile.

    Each breakpoint of the profile after the first defines a jump.
    Overshoot is the peak ground-truth excursion beyond the target, in the
    jump direction, as a percentage of the jump amplitude.  Settling
    distance is measured from the jump to where the ground-truth error last
    leaves the ``band_fraction * |amplitude|`` band within the segment.

    Raises:
        ValueError: for non-step profiles, empty traces, or profiles with
            no jump inside the trace.
    """
    if profile.kind != "step" or profile.levels is None:
        raise ValueError("step metrics require a step profile")
    levels = profile.levels
    if len(levels) < 2:
        raise ValueError("a step profile needs at least one jump")
    if len(trace) == 0:
        raise ValueError("trace is empty")
    s = trace.column("s")
    v_true = trace.column("v_true")

    out: list[StepMetrics] = []
    for j in range(1, len(levels)):
        s_jump, target = float(levels[j][0]), float(levels[j][1])
        previous = float(levels[j - 1][1])
        amplitude = target - previous
        if amplitude == 0.0:
            continue
        s_end = float(levels[j + 1][0]) if j + 1 < len(levels) else math.inf
        mask = (s >= s_jump) & (s < s_end)
        if not mask.any():
            continue
        seg_v = v_true[mask]
        seg_s = s[mask]
        direction = math.copysign(1.0, amplitude)
        excursion = direction * (seg_v - target)
        overshoot = 100.0 * max(0.0, float(excursion.max())) / abs(amplitude)

        band = band_fraction * abs(amplitude)
        err = np.abs(seg_v - target)
        outside = np.where(err >= band)[0]
        if outside.size == 0:
            settle = 0.0
        elif outside[-1] == err.size - 1:
            settle = math.nan
        else:
            settle = float(seg_s[outside[-1] + 1] - s_jump)
        out.append(
            StepMetrics(
                jump_abscissa=s_jump,
                amplitude=amplitude,
                overshoot_pct=overshoot,
                settling_distance=settle,
            )
        )
    if not out:
        raise ValueError("no jumps of the profile fall inside the trace")
    return out


def write_metrics_csv(
    path: str | Path,
    rows: Sequence[tuple[str, ErrorStats, Sequence[StepMetrics] | None]],
) -> None:
    """Write a comparison table: one row per run label.

    Columns: label, mean, std_dev, rms, then per-jump overshoot/settling
    pairs when step metrics are present (padded by the widest row).
    """
    max_jumps = max((len(sm) if sm else 0) for _, _, sm in rows)
    header = ["label", "mean", "std_dev", "rms"]
    for i in range(1, max_jumps + 1):
        header += [f"overshoot{i}_pct", f"settling{i}_m"]
    lines = [",".join(header)]
    for label, stats, sm in rows:
        cells = [label, f"{stats.mean:.6f}", f"{stats.std_dev:.6f}", f"{stats.rms:.6f}"]
        sm = sm or []
        for i in range(max_jumps):
            if i < len(sm):
                cells += [f"{sm[i].overshoot_pct:.4f}", f"{sm[i].settling_distance:.3f}"]
            else:
                cells += ["", ""]
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")
