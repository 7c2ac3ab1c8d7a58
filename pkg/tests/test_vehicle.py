"""Tire curve, slip ratio, plant dynamics and integrator tests."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfcsim.vehicle import (
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
    integrate_substeps,
    pacejka_force,
    slip_ratio,
)

VEH = VehicleParams()
TIRES = default_tires(VEH)


def bisect_peak_slip(tire: TireParams, lo=1e-6, hi=1.0, iters=200) -> float:
    """Independent oracle: solve for the slip where the curve's inner
    argument reaches tan(pi/(2C)), i.e. where the sine hits its maximum."""
    target = math.tan(math.pi / (2.0 * tire.shape_factor))

    def inner(tau):
        bt = tire.stiffness_factor * tau
        return bt - tire.curvature_factor * (bt - math.atan(bt)) - target

    assert inner(lo) < 0.0 < inner(hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if inner(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestPacejkaForce:
    def test_zero_slip_gives_zero_force(self):
        assert pacejka_force(0.0, TIRES.front) == 0.0

    def test_peak_slip_reaches_peak_force(self):
        tire = fit_pacejka(4000.0, 3500.0, 80000.0, 0.15)
        tau_m = bisect_peak_slip(tire)
        assert pacejka_force(tau_m, tire) == pytest.approx(tire.peak_force, rel=1e-9)

    def test_negative_peak_slip_reaches_negative_peak(self):
        tire = fit_pacejka(4000.0, 3500.0, 80000.0, 0.15)
        tau_m = bisect_peak_slip(tire)
        assert pacejka_force(-tau_m, tire) == pytest.approx(-tire.peak_force, rel=1e-9)

    @given(tau=st.floats(-1.0, 1.0))
    def test_odd(self, tau):
        f = pacejka_force(tau, TIRES.front)
        assert pacejka_force(-tau, TIRES.front) == pytest.approx(-f, abs=1e-9)

    @given(tau=st.floats(-1.0, 1.0))
    def test_bounded_by_peak(self, tau):
        assert abs(pacejka_force(tau, TIRES.front)) <= TIRES.front.peak_force * (1 + 1e-12)

    def test_asymptote_matches_shape_factor(self):
        tire = fit_pacejka(4000.0, 3500.0, 80000.0, 0.15)
        assert pacejka_force(1e9, tire) == pytest.approx(3500.0, rel=1e-6)


class TestFitPacejka:
    def test_asymptote_equal_peak_gives_shape_one(self):
        tire = fit_pacejka(4000.0, 4000.0, 80000.0, 0.15)
        assert tire.shape_factor == pytest.approx(1.0)

    def test_slope_equal_cd_gives_unit_stiffness(self):
        c = 2.0 - (2.0 / math.pi) * math.asin(3500.0 / 4000.0)
        tire = fit_pacejka(4000.0, 3500.0, c * 4000.0, 0.15)
        assert tire.stiffness_factor == pytest.approx(1.0)

    def test_round_trip_recovers_curve_features(self):
        peak, asym, slope, peak_slip = 4000.0, 3500.0, 80000.0, 0.15
        tire = fit_pacejka(peak, asym, slope, peak_slip)

        tau_m = bisect_peak_slip(tire)
        assert tau_m == pytest.approx(peak_slip, rel=1e-6)
        assert pacejka_force(tau_m, tire) == pytest.approx(peak, rel=1e-6)
        assert pacejka_force(1e12, tire) == pytest.approx(asym, rel=1e-6)
        h = 1e-7
        slope_num = (pacejka_force(h, tire) - pacejka_force(-h, tire)) / (2 * h)
        assert slope_num == pytest.approx(slope, rel=1e-6)

    def test_rejects_asymptote_above_peak(self):
        with pytest.raises(ValueError):
            fit_pacejka(4000.0, 4001.0, 80000.0, 0.15)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(peak=-1.0, asymptote=0.5, initial_slope=1.0, peak_slip=0.1),
            dict(peak=1.0, asymptote=0.5, initial_slope=-1.0, peak_slip=0.1),
            dict(peak=1.0, asymptote=0.5, initial_slope=1.0, peak_slip=-0.1),
            dict(peak=1.0, asymptote=0.0, initial_slope=1.0, peak_slip=0.1),
        ],
    )
    def test_rejects_bad_features(self, kwargs):
        with pytest.raises(ValueError):
            fit_pacejka(**kwargs)

    def test_asymptotic_value_bounded_by_peak(self):
        for asym in (500.0, 2000.0, 3999.0):
            tire = fit_pacejka(4000.0, asym, 60000.0, 0.12)
            assert abs(tire.asymptotic_force) <= tire.peak_force + 1e-9


class TestSlipRatio:
    def test_matched_speeds_give_zero(self):
        assert slip_ratio(10.0 / VEH.radius_effective, 10.0, VEH.radius_effective) == 0.0

    def test_propulsion_normalizes_by_wheel_speed(self):
        tau = slip_ratio(12.0 / 0.3, 10.0, 0.3)
        assert tau == pytest.approx(2.0 / 12.0)

    def test_opposite_directions_saturate(self):
        assert slip_ratio(-5.0 / 0.3, 10.0, 0.3) == -1.0

    def test_braking_normalizes_by_vehicle_speed(self):
        tau = slip_ratio(8.0 / 0.3, 10.0, 0.3)
        assert tau == pytest.approx(-0.2)

    @given(
        w=st.floats(-200.0, 200.0),
        v=st.floats(-60.0, 60.0),
    )
    def test_always_in_unit_interval(self, w, v):
        assert -1.0 <= slip_ratio(w, v, 0.3) <= 1.0


class TestDynamics:
    def test_steady_rolling_has_no_acceleration(self):
        state = VehicleState.rolling(20.0, VEH)
        d = dynamics(state, WheelTorques(), VEH, TIRES)
        assert d.vx == pytest.approx(0.0, abs=1e-12)
        assert d.vy == pytest.approx(0.0, abs=1e-12)
        assert d.yaw_rate == pytest.approx(0.0, abs=1e-12)
        assert all(o == pytest.approx(0.0, abs=1e-12) for o in d.omega)
        assert d.x == pytest.approx(20.0)
        assert d.s == pytest.approx(20.0)

    def test_straight_line_longitudinal_balance(self):
        w = (22.0 / 0.3, 22.0 / 0.3, 21.0 / 0.3, 21.0 / 0.3)
        state = VehicleState(vx=20.0, omega=w)
        d = dynamics(state, WheelTorques(), VEH, TIRES)
        total = 0.0
        for i in range(4):
            tire = TIRES.front if i < 2 else TIRES.rear
            total += pacejka_force(
                slip_ratio(w[i], 20.0, VEH.radius_effective), tire
            )
        assert d.vx == pytest.approx(total / VEH.mass_total)

    def test_wheel_spin_up_at_zero_slip_force(self):
        state = VehicleState.rolling(15.0, VEH)
        torques = WheelTorques(motor=(100.0, 0.0, 0.0, 0.0))
        d = dynamics(state, torques, VEH, TIRES)
        assert d.omega[0] == pytest.approx(100.0 / VEH.inertia_wheel)
        assert d.omega[1] == pytest.approx(0.0, abs=1e-12)


class TestIntegrateStep:
    def test_coasting_preserves_speed(self):
        state = VehicleState.rolling(17.0, VEH)
        for _ in range(1000):
            state = integrate_step(state, WheelTorques(), 0.001, VEH, TIRES)
        assert state.vx == pytest.approx(17.0, abs=1e-12)
        assert state.s == pytest.approx(17.0, rel=1e-12)

    def test_constant_acceleration_matches_kinematics(self):
        # Torques chosen so the slip ratio stays exactly constant: the wheel
        # must spin up in lockstep with the body, making the whole system
        # linear in time.  RK4 integrates the quadratic position exactly.
        tau = 0.05
        v0 = 10.0
        r = VEH.radius_effective
        forces = [
            pacejka_force(tau, TIRES.front if i < 2 else TIRES.rear) for i in range(4)
        ]
        accel = sum(forces) / VEH.mass_total
        omega_dot = accel / (r * (1.0 - tau))
        motor = tuple(forces[i] * r + VEH.inertia_wheel * omega_dot for i in range(4))
        w0 = v0 / (r * (1.0 - tau))
        state = VehicleState(vx=v0, omega=(w0, w0, w0, w0))
        t_end = 1.0
        state = integrate_substeps(
            state, WheelTorques(motor=motor), 0.001, 1000, VEH, TIRES
        )
        assert state.x == pytest.approx(v0 * t_end + 0.5 * accel * t_end**2, abs=1e-8)
        assert state.vx == pytest.approx(v0 + accel * t_end, abs=1e-9)

    def test_convergence_is_fourth_order(self):
        # Horizon kept inside the stiff wheel spin-up transient: afterwards
        # the trajectory is so smooth that step errors sink into roundoff.
        torques = WheelTorques(motor=(300.0, 300.0, 0.0, 0.0))

        def final_speed(dt):
            state = VehicleState.rolling(12.0, VEH)
            return integrate_substeps(state, torques, dt, int(round(0.02 / dt)), VEH, TIRES).vx

        v1 = final_speed(2e-3)
        v2 = final_speed(1e-3)
        v3 = final_speed(5e-4)
        ratio = abs(v1 - v2) / abs(v2 - v3)
        assert 8.0 < ratio < 40.0  # 2^4 = 16 up to higher-order terms

    def test_deterministic(self):
        state = VehicleState.rolling(12.0, VEH)
        torques = WheelTorques(motor=(200.0, 200.0, 0.0, 0.0))
        a = integrate_step(state, torques, 0.001, VEH, TIRES)
        b = integrate_step(state, torques, 0.001, VEH, TIRES)
        assert a == b

    def test_rejects_nonpositive_dt(self):
        with pytest.raises(ValueError):
            integrate_step(VehicleState(), WheelTorques(), 0.0, VEH, TIRES)

    def test_detects_divergence(self):
        state = VehicleState(vx=math.inf)
        with pytest.raises(SimulationDiverged):
            integrate_step(state, WheelTorques(), 0.001, VEH, TIRES)


class TestParamValidation:
    def test_vehicle_params_reject_nonpositive(self):
        with pytest.raises(ValueError):
            VehicleParams(mass_total=0.0)

    def test_brakes_must_be_nonnegative(self):
        with pytest.raises(ValueError):
            WheelTorques(brake=(-1.0, 0.0, 0.0, 0.0))

    def test_tire_shape_factor_domain(self):
        with pytest.raises(ValueError):
            TireParams(stiffness_factor=10.0, shape_factor=2.5, peak_force=1000.0, curvature_factor=0.0)

    def test_wheelbase(self):
        assert VEH.wheelbase == pytest.approx(2.6)

    def test_static_loads_sum_to_weight(self):
        total = 2 * VEH.static_load_front() + 2 * VEH.static_load_rear()
        assert total == pytest.approx(VEH.mass_total * VEH.gravity)
