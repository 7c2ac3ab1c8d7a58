"""Command-line harness: run scenarios, compare controller modes, fit tires.

Subcommands:
    run              one closed-loop run; writes trace.csv and metrics.csv
    compare          classic vs adaptive on the same scenario and seed,
                     optionally repeated with a 250 ms actuation delay
    fit-tire         fit Magic-Formula coefficients from curve features
    gen-driver-data  write a synthetic driver recording

Exit codes: 0 success, 2 configuration error, 3 simulation divergence.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .config import (
    ConfigError,
    apply_overrides,
    build_profile,
    build_run_config,
    load_config,
)
from .harness import RunConfig, RunTrace, run, write_trace_csv
from .metrics import error_stats, step_metrics, write_metrics_csv
from .scenario import synthesize_driver_record, write_driver_records
from .vehicle import SimulationDiverged, fit_pacejka

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIVERGED = 3

DELAY_SWEEP_SECONDS = 0.25


def _parse_set_options(pairs: list[str]) -> dict[str, str]:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"--set expects key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _atomic_write(path: Path, writer, *args) -> None:
    """Write via a temp file and rename, so failures leave no partial CSV."""
    tmp = path.with_suffix(path.suffix + ".tmp")
    writer(*args, tmp)
    tmp.replace(path)


def _effective_config(args: argparse.Namespace) -> dict[str, str]:
    cfg = load_config(args.config)
    overrides = _parse_set_options(args.set or [])
    if args.seed is not None:
        overrides["run.seed"] = str(args.seed)
    if args.delay_ms is not None:
        overrides["run.delay"] = str(args.delay_ms / 1000.0)
    return apply_overrides(cfg, overrides)


def _metrics_row(label: str, trace: RunTrace, cfg_map: dict[str, str], profile):
    stats = error_stats(trace, "true")
    sm = None
    if cfg_map.get("scenario.kind") == "step":
        sm = step_metrics(trace, profile)
    return (label, stats, sm)


def cmd_run(args: argparse.Namespace) -> int:
    cfg_map = _effective_config(args)
    base = Path(args.config).parent if args.config else None
    run_cfg = build_run_config(cfg_map, base)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    trace = run(run_cfg)
    _atomic_write(out_dir / "trace.csv", lambda t, p: write_trace_csv(t, p), trace)
    row = _metrics_row(cfg_map.get("controller.mode", "classic"), trace, cfg_map, run_cfg.profile)
    _atomic_write(out_dir / "metrics.csv", lambda r, p: write_metrics_csv(p, [r]), row)
    print(f"wrote {out_dir / 'trace.csv'} and {out_dir / 'metrics.csv'}")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    cfg_map = _effective_config(args)
    base = Path(args.config).parent if args.config else None
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    variants: list[tuple[str, str, float]] = [
        ("classic", "classic", 0.0),
        ("adaptive", "adaptive", 0.0),
    ]
    if cfg_map.get("run.delay_sweep", "false").strip().lower() in ("true", "1", "yes", "on"):
        variants += [
            ("classic_delay", "classic", DELAY_SWEEP_SECONDS),
            ("adaptive_delay", "adaptive", DELAY_SWEEP_SECONDS),
        ]

    rows = []
    for label, mode, delay in variants:
        vm = dict(cfg_map)
        vm["controller.mode"] = mode
        vm["run.delay"] = str(delay)
        run_cfg = build_run_config(vm, base)
        trace = run(run_cfg)
        _atomic_write(
            out_dir / f"trace_{label}.csv", lambda t, p: write_trace_csv(t, p), trace
        )
        rows.append(_metrics_row(label, trace, vm, run_cfg.profile))
    _atomic_write(out_dir / "comparison.csv", lambda r, p: write_metrics_csv(p, r), rows)
    for label, stats, _ in rows:
        print(f"{label}: mean={stats.mean:+.4f} std={stats.std_dev:.4f} rms={stats.rms:.4f}")
    print(f"wrote comparison table to {out_dir / 'comparison.csv'}")
    return EXIT_OK


def cmd_fit_tire(args: argparse.Namespace) -> int:
    tire = fit_pacejka(
        peak=args.peak,
        asymptote=args.asymptote,
        initial_slope=args.slope,
        peak_slip=args.peak_slip,
    )
    print(f"# fitted Magic-Formula coefficients (peak {args.peak} N)")
    print(f"tire.b={tire.stiffness_factor:.9g}")
    print(f"tire.c={tire.shape_factor:.9g}")
    print(f"tire.d={tire.peak_force:.9g}")
    print(f"tire.e={tire.curvature_factor:.9g}")
    return EXIT_OK


def cmd_gen_driver_data(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = synthesize_driver_record(seed=args.seed)
    path = out_dir / "driver.csv"
    _atomic_write(path, lambda r, p: write_driver_records(r, p), records)
    print(f"wrote {len(records)} records ({records[-1].t:.1f} s) to {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfcsim",
        description="Model-free longitudinal control simulation harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=str, default=None, help="config file path")
        p.add_argument("--out", type=str, default="out", help="output directory")
        p.add_argument(
            "--set",
            action="append",
            metavar="KEY=VALUE",
            help="override a config entry (repeatable)",
        )
        p.add_argument("--seed", type=int, default=None, help="override run.seed")
        p.add_argument(
            "--delay-ms", type=float, default=None, help="override run.delay (milliseconds)"
        )

    p_run = sub.add_parser("run", help="execute one closed-loop run")
    add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_cmp = sub.add_parser("compare", help="classic vs adaptive on one scenario")
    add_common(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)

    p_fit = sub.add_parser("fit-tire", help="fit tire coefficients from curve features")
    p_fit.add_argument("--peak", type=float, required=True, help="peak force [N]")
    p_fit.add_argument("--asymptote", type=float, required=True, help="asymptotic force [N]")
    p_fit.add_argument("--slope", type=float, required=True, help="initial slope [N/unit slip]")
    p_fit.add_argument("--peak-slip", type=float, required=True, help="slip at the peak")
    p_fit.set_defaults(func=cmd_fit_tire)

    p_gen = sub.add_parser("gen-driver-data", help="write a synthetic driver recording")
    p_gen.add_argument("--out", type=str, default="out", help="output directory")
    p_gen.add_argument("--seed", type=int, default=2024, help="generation seed")
    p_gen.set_defaults(func=cmd_gen_driver_data)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SimulationDiverged as exc:
        print(f"simulation diverged: {exc}", file=sys.stderr)
        return EXIT_DIVERGED


if __name__ == "__main__":
    sys.exit(main())
