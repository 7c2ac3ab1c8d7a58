"""Flat key-value configuration for the harness and CLI.

The on-disk format is one ``section.key=value`` assignment per line, with
``#`` comments and blank lines ignored.  The same dotted keys are accepted
as command-line overrides, which take precedence over the file.

Gains that the practitioner would tune per experiment (``controller.kp``
and ``controller.alpha_nominal``) default per scenario kind unless set
explicitly: reference profiles with discontinuities (step) and smooth
analytic ones (sine) run a lightly detuned loop, while the recorded-driver
scenario runs with a larger nominal-gain mismatch where the adaptive
variant pays off most.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .controller import ControllerConfig
from .harness import DEFAULT_NOISE_STD, RunConfig
from .scenario import (
    ReferenceProfile,
    driver_profile,
    read_driver_records,
    reconstruct_path,
    sine_profile,
    step_profile,
)
from .vehicle import TireParams, TirePair, VehicleParams, default_tires

__all__ = [
    "ConfigError",
    "parse_config_text",
    "load_config",
    "apply_overrides",
    "default_config",
    "build_run_config",
    "SCENARIO_GAIN_PRESETS",
]


class ConfigError(ValueError):
    """Malformed configuration file, key or value."""


# (kp, alpha_nominal) unless overridden; tuned per reference class
SCENARIO_GAIN_PRESETS: dict[str, tuple[float, float]] = {
    "step": (10.0, 0.02),
    "sine": (10.0, 0.02),
    "driver": (15.0, 0.2),
}

_DEFAULTS: dict[str, str] = {
    "vehicle.mass": "1500.0",
    "vehicle.cg_to_front": "1.2",
    "vehicle.cg_to_rear": "1.4",
    "vehicle.yaw_inertia": "2500.0",
    "vehicle.wheel_inertia": "1.2",
    "vehicle.wheel_radius": "0.3",
    "vehicle.gravity": "9.81",
    "vehicle.cornering_stiffness": "80000.0",
    "tire.peak_scale": "0.9",
    "tire.asymptote_scale": "0.75",
    "tire.slope_scale": "15.0",
    "tire.peak_slip": "0.15",
    "tire.slip_regularization": "0.5",
    "controller.mode": "classic",
    "controller.epsilon": "0.01",
    "controller.torque_limit": "2000.0",
    "controller.control_dt": "0.01",
    "estimator.window": "0.2",
    "scenario.kind": "step",
    "scenario.step_levels": "0:10,50:15,250:12",
    "scenario.sine_mean": "15.0",
    "scenario.sine_amplitude": "3.0",
    "scenario.sine_wavelength": "200.0",
    "scenario.driver_file": "",
    "run.duration": "45.0",
    "run.noise": "true",
    "run.noise_std": repr(DEFAULT_NOISE_STD),
    "run.delay": "0.0",
    "run.seed": "42",
    "run.plant_dt": "0.001",
    "run.delay_sweep": "false",
}

# optional keys that have no default and may be absent entirely
_OPTIONAL = {
    "controller.kp",
    "controller.alpha_nominal",
    "run.distance",
    "run.initial_speed",
    # raw Magic-Formula coefficients; when all four are given they replace
    # the load-scaled fit on both axles (the fit-tire subcommand echoes these)
    "tire.b",
    "tire.c",
    "tire.d",
    "tire.e",
}


def default_config() -> dict[str, str]:
    return dict(_DEFAULTS)


def parse_config_text(text: str) -> dict[str, str]:
    """Parse ``key=value`` lines into a flat mapping.

    Raises:
        ConfigError: on lines without '=', or unknown keys.
    """
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if key not in _DEFAULTS and key not in _OPTIONAL:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        out[key] = value.strip()
    return out


def load_config(path: str | Path | None) -> dict[str, str]:
    """Defaults merged with an optional config file."""
    cfg = default_config()
    if path is not None:
        p = Path(path)
        if not p.is_file():
            raise ConfigError(f"config file not found: {p}")
        cfg.update(parse_config_text(p.read_text()))
    return cfg


def apply_overrides(cfg: dict[str, str], overrides: Mapping[str, str] | None) -> dict[str, str]:
    """Apply ``--set key=value`` style overrides, validating key names."""
    out = dict(cfg)
    for key, value in (overrides or {}).items():
        if key not in _DEFAULTS and key not in _OPTIONAL:
            raise ConfigError(f"unknown config key {key!r}")
        out[key] = value
    return out


def _get_float(cfg: Mapping[str, str], key: str) -> float:
    try:
        return float(cfg[key])
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad float for {key!r}: {cfg.get(key)!r}") from exc


def _get_int(cfg: Mapping[str, str], key: str) -> int:
    try:
        return int(cfg[key])
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad integer for {key!r}: {cfg.get(key)!r}") from exc


def _get_bool(cfg: Mapping[str, str], key: str) -> bool:
    value = cfg.get(key, "").strip().lower()
    if value in ("true", "1", "yes", "on"):
        return True
    if value in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"bad boolean for {key!r}: {cfg.get(key)!r}")


def _parse_levels(text: str) -> list[tuple[float, float]]:
    """'0:10,50:15' -> [(0.0, 10.0), (50.0, 15.0)]."""
    levels = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise ConfigError(f"bad step level {part!r}, expected abscissa:speed")
        a, b = part.split(":", 1)
        levels.append((float(a), float(b)))
    if not levels:
        raise ConfigError("step_levels must contain at least one level")
    return levels


def build_vehicle(cfg: Mapping[str, str]) -> VehicleParams:
    return VehicleParams(
        mass_total=_get_float(cfg, "vehicle.mass"),
        dist_cg_front=_get_float(cfg, "vehicle.cg_to_front"),
        dist_cg_rear=_get_float(cfg, "vehicle.cg_to_rear"),
        inertia_yaw=_get_float(cfg, "vehicle.yaw_inertia"),
        inertia_wheel=_get_float(cfg, "vehicle.wheel_inertia"),
        radius_effective=_get_float(cfg, "vehicle.wheel_radius"),
        gravity=_get_float(cfg, "vehicle.gravity"),
        cornering_stiffness=_get_float(cfg, "vehicle.cornering_stiffness"),
    )


def build_tires(cfg: Mapping[str, str], veh: VehicleParams) -> TirePair:
    raw = [k for k in ("tire.b", "tire.c", "tire.d", "tire.e") if k in cfg]
    if raw:
        if len(raw) != 4:
            raise ConfigError("tire.b, tire.c, tire.d and tire.e must be given together")
        tire = TireParams(
            stiffness_factor=_get_float(cfg, "tire.b"),
            shape_factor=_get_float(cfg, "tire.c"),
            peak_force=_get_float(cfg, "tire.d"),
            curvature_factor=_get_float(cfg, "tire.e"),
            slip_regularization_speed=_get_float(cfg, "tire.slip_regularization"),
        )
        return TirePair(front=tire, rear=tire)
    return default_tires(
        veh,
        peak_scale=_get_float(cfg, "tire.peak_scale"),
        asymptote_scale=_get_float(cfg, "tire.asymptote_scale"),
        slope_scale=_get_float(cfg, "tire.slope_scale"),
        peak_slip=_get_float(cfg, "tire.peak_slip"),
        slip_regularization_speed=_get_float(cfg, "tire.slip_regularization"),
    )


def build_profile(cfg: Mapping[str, str], base_dir: Path | None = None) -> ReferenceProfile:
    kind = cfg.get("scenario.kind", "").strip()
    if kind == "step":
        return step_profile(_parse_levels(cfg["scenario.step_levels"]))
    if kind == "sine":
        return sine_profile(
            mean=_get_float(cfg, "scenario.sine_mean"),
            amplitude=_get_float(cfg, "scenario.sine_amplitude"),
            wavelength=_get_float(cfg, "scenario.sine_wavelength"),
        )
    if kind == "driver":
        file_value = cfg.get("scenario.driver_file", "").strip()
        if not file_value:
            raise ConfigError("scenario.driver_file is required for the driver scenario")
        path = Path(file_value)
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        records = read_driver_records(path)
        return driver_profile(reconstruct_path(records))
    raise ConfigError(f"unknown scenario kind {kind!r}")


def build_controller(cfg: Mapping[str, str]) -> ControllerConfig:
    kind = cfg.get("scenario.kind", "step").strip()
    preset_kp, preset_alpha = SCENARIO_GAIN_PRESETS.get(kind, SCENARIO_GAIN_PRESETS["step"])
    kp = float(cfg["controller.kp"]) if "controller.kp" in cfg else preset_kp
    alpha = (
        float(cfg["controller.alpha_nominal"])
        if "controller.alpha_nominal" in cfg
        else preset_alpha
    )
    return ControllerConfig(
        gain_kp=kp,
        alpha_nominal=alpha,
        epsilon=_get_float(cfg, "controller.epsilon"),
        mode=cfg.get("controller.mode", "classic").strip(),
        torque_limit=_get_float(cfg, "controller.torque_limit"),
        control_dt=_get_float(cfg, "controller.control_dt"),
    )


def build_run_config(
    cfg: Mapping[str, str],
    base_dir: Path | None = None,
) -> RunConfig:
    """Assemble a RunConfig from a flat mapping.

    Raises:
        ConfigError: on any malformed or inconsistent entry.
    """
    veh = build_vehicle(cfg)
    try:
        profile = build_profile(cfg, base_dir)
        controller = build_controller(cfg)
        duration = _get_float(cfg, "run.duration") if "run.distance" not in cfg else None
        distance = _get_float(cfg, "run.distance") if "run.distance" in cfg else None
        initial = (
            _get_float(cfg, "run.initial_speed") if "run.initial_speed" in cfg else None
        )
        return RunConfig(
            profile=profile,
            controller=controller,
            vehicle=veh,
            tires=build_tires(cfg, veh),
            noise_enabled=_get_bool(cfg, "run.noise"),
            noise_std=_get_float(cfg, "run.noise_std"),
            actuation_delay=_get_float(cfg, "run.delay"),
            duration=duration,
            distance=distance,
            seed=_get_int(cfg, "run.seed"),
            plant_dt=_get_float(cfg, "run.plant_dt"),
            initial_speed=initial,
            estimator_window=_get_float(cfg, "estimator.window"),
        )
    except ConfigError:
        raise
    except (ValueError, OSError) as exc:
        raise ConfigError(str(exc)) from exc
