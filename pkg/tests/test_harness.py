"""Closed-loop harness tests: determinism, delay line, noise, logging."""

import math

import numpy as np
import pytest

from mfcsim.controller import ControllerConfig
from mfcsim.harness import (
    DEFAULT_NOISE_STD,
    DelayLine,
    RunConfig,
    add_noise,
    read_trace_csv,
    run,
    write_trace_csv,
    TRACE_HEADER,
)
from mfcsim.scenario import step_profile
from mfcsim.vehicle import WheelTorques


def make_config(**kwargs) -> RunConfig:
    defaults = dict(
        profile=step_profile([(0.0, 12.0)]),
        controller=ControllerConfig(),
        duration=5.0,
        noise_enabled=False,
    )
    defaults.update(kwargs)
    return RunConfig(**defaults)


class TestRunConfigValidation:
    def test_requires_duration_or_distance(self):
        with pytest.raises(ValueError):
            RunConfig(profile=step_profile([(0.0, 10.0)]))
        with pytest.raises(ValueError):
            RunConfig(profile=step_profile([(0.0, 10.0)]), duration=1.0, distance=1.0)

    def test_control_period_must_be_multiple_of_plant_step(self):
        with pytest.raises(ValueError):
            make_config(plant_dt=0.003)

    def test_negative_delay_rejected(self):
        with pytest.raises(ValueError):
            make_config(actuation_delay=-0.1)

    def test_delay_steps(self):
        cfg = make_config(actuation_delay=0.25)
        assert cfg.delay_steps == 25


class TestEquilibrium:
    def test_constant_profile_at_initial_speed_is_idle(self):
        trace = run(make_config())
        err = trace.error_true()
        u = trace.column("u_total")
        assert np.abs(err).max() < 1e-6
        assert np.abs(u).max() < 1e-3


class TestDeterminism:
    def test_identical_runs_bitwise_equal(self, tmp_path):
        cfg = make_config(
            profile=step_profile([(0.0, 10.0), (30.0, 14.0)]),
            noise_enabled=True,
            duration=3.0,
            seed=9,
        )
        a, b = run(cfg), run(cfg)
        pa, pb = tmp_path / "a.csv", tmp_path / "b.csv"
        write_trace_csv(a, pa)
        write_trace_csv(b, pb)
        assert pa.read_bytes() == pb.read_bytes()

    def test_seed_changes_noise(self):
        cfg1 = make_config(noise_enabled=True, duration=1.0, seed=1)
        cfg2 = make_config(noise_enabled=True, duration=1.0, seed=2)
        assert run(cfg1).column("v_meas")[5] != run(cfg2).column("v_meas")[5]


class TestDelayLine:
    def test_depth_zero_is_identity(self):
        line = DelayLine(0)
        total, tq = line.shift(42.0, WheelTorques(motor=(21.0, 21.0, 0.0, 0.0)))
        assert total == 42.0

    def test_commands_emerge_after_depth_steps(self):
        line = DelayLine(3)
        outs = [line.shift(float(k), WheelTorques())[0] for k in range(6)]
        assert outs == [0.0, 0.0, 0.0, 0.0, 1.0, 2.0]

    def test_constant_stream_passes_through(self):
        line = DelayLine(4)
        outs = [line.shift(5.0, WheelTorques())[0] for _ in range(10)]
        assert outs[4:] == [5.0] * 6

    def test_zero_delay_run_applies_commands_immediately(self):
        trace = run(make_config(profile=step_profile([(0.0, 10.0), (20.0, 13.0)])))
        assert np.array_equal(trace.column("u_total"), trace.column("u_applied"))

    def test_delayed_run_shifts_applied_commands(self):
        cfg = make_config(
            profile=step_profile([(0.0, 10.0), (20.0, 13.0)]),
            actuation_delay=0.25,
        )
        trace = run(cfg)
        u = trace.column("u_total")
        ua = trace.column("u_applied")
        assert np.allclose(ua[:25], 0.0)
        assert np.array_equal(ua[25:], u[:-25])


class TestNoise:
    def test_disabled_noise_is_identity(self):
        trace = run(make_config())
        assert np.array_equal(trace.column("v_true"), trace.column("v_meas"))

    def test_moments_of_the_default_noise(self):
        rng = np.random.default_rng(123)
        draws = np.array([add_noise(0.0, rng, DEFAULT_NOISE_STD) for _ in range(10**6)])
        assert abs(draws.mean()) < 4.0 * DEFAULT_NOISE_STD / 1000.0
        assert draws.std() == pytest.approx(DEFAULT_NOISE_STD, rel=0.01)

    def test_default_std_is_minus_six_decibels(self):
        assert DEFAULT_NOISE_STD == pytest.approx(0.501187, rel=1e-5)


class TestLogging:
    def test_error_column_is_measured_minus_reference(self):
        cfg = make_config(noise_enabled=True, duration=2.0)
        trace = run(cfg)
        err = trace.column("v_meas") - trace.column("v_ref")
        assert np.array_equal(trace.column("error"), err)

    def test_record_count_matches_duration(self):
        trace = run(make_config(duration=2.0))
        assert len(trace) == 200

    def test_time_strictly_increasing(self):
        trace = run(make_config(duration=1.0))
        assert np.all(np.diff(trace.column("t")) > 0.0)

    def test_distance_termination(self):
        cfg = make_config(duration=None, distance=30.0)
        trace = run(cfg)
        assert trace.records[-1].s < 30.0 + 0.2
        assert trace.records[-1].s > 29.0

    def test_csv_round_trip(self, tmp_path):
        trace = run(make_config(duration=1.0))
        path = tmp_path / "trace.csv"
        write_trace_csv(trace, path)
        text = path.read_text()
        assert text.startswith(TRACE_HEADER + "\n")
        loaded = read_trace_csv(path)
        assert len(loaded) == len(trace)
        assert loaded.records[10].v_true == pytest.approx(
            trace.records[10].v_true, abs=1e-9
        )

    def test_read_rejects_wrong_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError):
            read_trace_csv(path)
