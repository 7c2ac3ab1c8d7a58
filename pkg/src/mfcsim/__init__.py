"""Model-free longitudinal vehicle control, simulated end to end.

A speed loop built on a short-horizon input-output model with an integral
estimator of the lumped dynamics, an intelligent-proportional control law
and an optional time-varying input gain, exercised in closed loop against
a planar 7-DoF vehicle plant with Magic-Formula tires.
"""

from .controller import (
    ControlCommand,
    ControllerConfig,
    ControllerState,
    SpeedController,
    ip_control,
    split_torque,
    update_alpha,
)
from .estimator import (
    EstimatorConfig,
    InsufficientSamplesError,
    SignalWindow,
    estimate_lumped_dynamics,
    push_sample,
)
from .harness import (
    DEFAULT_NOISE_STD,
    DelayLine,
    LogRecord,
    RunConfig,
    RunTrace,
    add_noise,
    read_trace_csv,
    run,
    write_trace_csv,
)
from .metrics import ErrorStats, StepMetrics, error_stats, step_metrics
from .scenario import (
    DriverRecord,
    ReconstructedPath,
    ReferenceProfile,
    driver_profile,
    moving_average,
    read_driver_records,
    reconstruct_path,
    sine_profile,
    step_profile,
    synthesize_driver_record,
    write_driver_records,
)
from .vehicle import (
    SimulationDiverged,
    TireParams,
    TirePair,
    VehicleParams,
    VehicleState,
    WheelTorques,
    default_tires,
    dynamics,
    fit_pacejka,
    integrate_step,
    pacejka_force,
    slip_ratio,
)

__version__ = "0.1.0"
