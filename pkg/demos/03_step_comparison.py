"""Classic versus adaptive speed control on successive reference steps.

The reference speed jumps with position: 10 m/s from the start, 15 m/s at
50 m, 12 m/s at 250 m.  Discontinuous references are where the fixed-gain
loop overshoots and rings; the adaptive gain reacts when the error changes
sign, cutting the torque and damping the response.  Traces land in
demo_out/ for plotting.
"""

from pathlib import Path

from mfcsim import (
    ControllerConfig,
    RunConfig,
    error_stats,
    run,
    step_metrics,
    step_profile,
    write_trace_csv,
)

OUT = Path("demo_out")
OUT.mkdir(exist_ok=True)

levels = [(0.0, 10.0), (50.0, 15.0), (250.0, 12.0)]
profile = step_profile(levels)

traces = {}
for mode in ("classic", "adaptive"):
    cfg = RunConfig(
        profile=profile,
        controller=ControllerConfig(gain_kp=10.0, alpha_nominal=0.02, mode=mode),
        duration=45.0,
        seed=42,
    )
    traces[mode] = run(cfg)
    write_trace_csv(traces[mode], OUT / f"step_{mode}.csv")

print("jump responses (overshoot % of jump amplitude, settling distance):")
for mode, trace in traces.items():
    stats = error_stats(trace)
    jumps = step_metrics(trace, profile)
    line = ", ".join(
        f"{m.overshoot_pct:5.1f}% / {m.settling_distance:5.0f} m" for m in jumps
    )
    print(f"  {mode:9s} {line}   rms error {stats.rms:.3f} m/s")

alpha = traces["adaptive"].column("alpha_hat")
frac = float((alpha == 0.02).mean())
print(f"\nadaptive gain sits at its nominal value for {100*frac:.0f}% of the run;")
print(f"its peak is {alpha.max():.2f}, reached when the speed crosses the target.")
print(f"traces written to {OUT}/step_classic.csv and {OUT}/step_adaptive.csv")
