import math

import numpy as np
import pytest

from hoverauv.coefficients import DISSIPATIVE_DIAGONAL, apply_calibration
from hoverauv.config import SimulationOptions, VehicleConfig
from hoverauv.environment import Environment
from hoverauv.errors import MalformedLog, MissionTimeout, NoOverlap, NumericalBlowup
from hoverauv.kernels import get_kernel
from hoverauv.kernels.layout import DAMP_NAMES
from hoverauv.logs import CommandLog, TrajectoryLog
from hoverauv.mission import MissionPlan
from hoverauv.propulsion import delivered_thrust
from hoverauv.simulator import (
    build_vehicle, compare, compute_metrics, fit_calibration, initial_state, relative_surge, replay,
    run_mission, start_state, step,
)

CMD = np.array([20.0, 15.0, 8.0, 10.0, -5.0])


def test_equilibrium_is_stationary(vehicle):
    s = step(initial_state(eta=[0.0, 0.0, 5.0, 0.0, 0.0, 0.4]), np.zeros(5), vehicle, 0.01, 1000)
    np.testing.assert_allclose(s.x[:12], [0.0, 0.0, 5.0, 0.0, 0.0, 0.4] + [0.0] * 6, atol=1e-12)
    assert s.t == pytest.approx(10.0)


def test_drifts_with_current_at_zero_relative_velocity():
    v = build_vehicle(env=Environment(current=(0.1, -0.05, 0.0)))
    s = initial_state(eta=[0.0, 0.0, 5.0, 0.0, 0.0, 0.0], nu=[0.1, -0.05, 0.0, 0.0, 0.0, 0.0])
    s = step(s, np.zeros(5), v, 0.01, 500)
    np.testing.assert_allclose(s.x[6:12], [0.1, -0.05, 0.0, 0.0, 0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(s.x[:2], [0.5, -0.25], atol=1e-10)


def test_rk4_observed_order(vehicle):
    x0 = initial_state(eta=[0.0, 0.0, 5.0, 0.02, 0.1, 0.0], nu=[0.3, 0.05, 0.05, 0.02, 0.02, 0.1], n=CMD)
    runs = [step(x0, CMD, vehicle, dt, int(round(3.0 / dt))).x for dt in (0.1, 0.05, 0.025, 0.0125)]
    diffs = [np.linalg.norm(a - b) for a, b in zip(runs, runs[1:])]
    orders = [math.log2(a / b) for a, b in zip(diffs, diffs[1:])]
    assert min(orders) >= 3.8, orders


def test_terminal_surge_velocity(vehicle):
    n = np.array([20.0, 20.0, 0.0, 0.0, 0.0])
    s = step(initial_state(n=n), n, vehicle, 0.01, 20000)
    u = s.x[6]
    T = 2.0 * delivered_thrust(vehicle.config.thrusters[0], 20.0, u)
    assert u == pytest.approx(math.sqrt(T / -vehicle.coeffs.get("X_uu")), rel=1e-4)


def dissipative(vehicle):
    keep = np.array([name in DISSIPATIVE_DIAGONAL for name in DAMP_NAMES])
    return vehicle.params._replace(damp=np.where(keep, vehicle.params.damp, 0.0),
                                   rest=np.zeros_like(vehicle.params.rest), vc=np.zeros(3))


def test_energy_non_increasing(vehicle, rng):
    P = dissipative(vehicle)
    M = vehicle.params.MA + vehicle.params.MRB
    kernel = get_kernel()
    for _ in range(100):
        x = np.zeros(17)
        x[3:6] = rng.uniform(-0.5, 0.5, 3)
        x[6:12] = rng.uniform(-1.0, 1.0, 6)
        energy = [0.5 * x[6:12] @ M @ x[6:12]]
        for _ in range(1000):
            x, ok = kernel.rk4_advance(x, np.zeros(5), 1, 0.01, P)
            assert ok
            energy.append(0.5 * x[6:12] @ M @ x[6:12])
        assert np.all(np.diff(energy) <= 1e-12 * energy[0])
        assert energy[-1] < energy[0]


def test_blowup_detected(vehicle):
    with pytest.raises(NumericalBlowup):
        step(initial_state(nu=[2e6, 0, 0, 0, 0, 0]), np.zeros(5), vehicle, 0.01)
    with pytest.raises(ValueError):
        step(initial_state(), np.zeros(5), vehicle, 0.5)


def test_replay_zero_log_is_stationary(vehicle):
    cmds = CommandLog(np.array([0.0, 5.0]), np.zeros((2, 5)))
    log = replay(cmds, vehicle, initial_state(eta=[1.0, 2.0, 5.0, 0.0, 0.0, 0.0]))
    assert len(log) == 51
    np.testing.assert_allclose(log.eta, np.tile([1.0, 2.0, 5.0, 0.0, 0.0, 0.0], (51, 1)), atol=1e-12)
    np.testing.assert_allclose(log.nu, 0.0, atol=1e-12)


def test_replay_matches_step_loop(vehicle):
    cmds = CommandLog(np.array([0.0, 1.0, 2.5, 4.0]),
                      np.array([[0, 0, 0, 0, 0], CMD, -0.5 * CMD, np.zeros(5)], float))
    log = replay(cmds, vehicle, initial_state(), dt=0.01, log_every=10)
    s = initial_state()
    expected = [s.x[:12].copy()]
    for k in range(400):
        row = cmds.index_at(k * 0.01 + 1e-11)
        s = step(s, cmds.n[row], vehicle, 0.01)
        if (k + 1) % 10 == 0:
            expected.append(s.x[:12].copy())
    got = np.hstack([log.eta, log.nu])
    np.testing.assert_allclose(got, np.array(expected), rtol=0, atol=1e-13)
    np.testing.assert_allclose(log.t, np.arange(41) * 0.1, atol=1e-12)


def short_plan():
    return MissionPlan(np.array([[0.0, 0.0, 2.0], [8.0, 0.0, 2.0], [8.0, 2.0, 2.0]]), 0.2, 1.0, 2.0)


@pytest.fixture(scope="module")
def current_run():
    v = build_vehicle(env=Environment(current=(0.0, 0.1, 0.0)))
    return v, run_mission(short_plan(), v)


@pytest.mark.slow
def test_replay_of_own_log(current_run):
    v, r = current_run
    log = replay(r.log.commands, v, start_state(short_plan(), v))
    n = len(r.log)
    np.testing.assert_allclose(log.t[:n], r.log.t, atol=1e-9)
    np.testing.assert_allclose(log.eta[:n], r.log.eta, rtol=0, atol=1e-9)
    np.testing.assert_allclose(log.nu[:n], r.log.nu, rtol=0, atol=1e-9)


@pytest.mark.slow
def test_closed_loop_is_deterministic(current_run):
    v, r = current_run
    again = run_mission(short_plan(), v)
    np.testing.assert_array_equal(again.log.eta, r.log.eta)
    np.testing.assert_array_equal(again.log.f, r.log.f)
    assert again.metrics == r.metrics


@pytest.mark.slow
def test_mission_metrics(current_run):
    _, r = current_run
    assert r.completed
    assert set(r.metrics) == {"rms_cross_track_m", "max_roll_deg", "duration_s", "distance_m"}
    assert r.metrics["distance_m"] == pytest.approx(10.0, rel=0.1)
    assert r.metrics["duration_s"] == pytest.approx(r.log.t[-1])
    assert r.log.commands.t[-1] > r.log.t[-1]


@pytest.mark.slow
def test_two_waypoint_calm_water(vehicle):
    plan = MissionPlan(np.array([[0.0, 0.0, 2.0], [20.0, 5.0, 2.0]]), 0.2, 1.0, 2.0)
    r = run_mission(plan, vehicle)
    assert r.metrics["rms_cross_track_m"] < 0.05


def test_empty_plan(vehicle):
    r = run_mission(MissionPlan(np.zeros((0, 3)), 0.2, 1.0, 2.0), vehicle)
    assert r.completed and len(r.log) == 0
    assert r.metrics == compute_metrics(TrajectoryLog.empty())


def test_timeout_carries_partial_log(vehicle):
    opts = SimulationOptions(timeout_factor=0.1, timeout_margin=0.0)
    with pytest.raises(MissionTimeout) as info:
        run_mission(short_plan(), vehicle, options=opts)
    partial = info.value.result
    assert not partial.completed
    assert 0 < len(partial.log) <= int(0.1 * short_plan().path_length / 0.2 / 0.1) + 2


def test_start_state_altitude(vehicle):
    s = start_state(short_plan(), vehicle)
    assert s.x[2] == pytest.approx(vehicle.env.seabed.depth_at(0.0, 0.0) - 2.0)
    assert s.x[5] == 0.0


def test_relative_surge_in_current():
    v = build_vehicle(env=Environment(current=(0.2, 0.0, 0.0)))
    assert relative_surge(initial_state(nu=[0.5, 0, 0, 0, 0, 0]).x, v) == pytest.approx(0.3)


def synthetic_log(t, offset=0.0):
    n = t.size
    eta = np.zeros((n, 6))
    nu = np.zeros((n, 6))
    nu[:, 0] = np.sin(t) + offset
    nu[:, 5] = np.cos(0.5 * t)
    eta[:, 5] = np.linspace(-3.0, 3.0, n)
    return TrajectoryLog(t, eta, nu, np.zeros((n, 6)), np.zeros((n, 5)), ["x"] * n, np.zeros(n), np.zeros(n))


def test_compare_identical_and_offset():
    t = np.linspace(0.0, 10.0, 101)
    rep = compare(synthetic_log(t), synthetic_log(t))
    assert all(v == (0.0, 0.0) for v in rep.channels.values())
    rep = compare(synthetic_log(t, 0.25), synthetic_log(t))
    assert rep.channels["u"][0] == pytest.approx(0.25)
    assert rep.channels["u"][1] == pytest.approx(0.25)
    assert rep.channels["psi"] == (0.0, 0.0)
    assert "psi" in rep.to_text() and rep.to_dict()["samples"] == 101


def test_compare_resampled_smooth_signal():
    fine = synthetic_log(np.linspace(0.0, 10.0, 100001))
    coarse = synthetic_log(np.linspace(0.0, 10.0, 37))
    rep = compare(coarse, fine)
    assert max(rms for rms, _ in rep.channels.values()) < 1e-6


def test_compare_without_overlap():
    with pytest.raises(NoOverlap):
        compare(synthetic_log(np.linspace(0.0, 1.0, 5)), synthetic_log(np.linspace(2.0, 3.0, 5)))
    with pytest.raises(NoOverlap):
        compare(TrajectoryLog.empty(), synthetic_log(np.linspace(0.0, 1.0, 5)))


def test_out_of_order_commands():
    with pytest.raises(MalformedLog):
        CommandLog(np.array([0.0, 2.0, 1.0]), np.zeros((3, 5)))


@pytest.mark.slow
def test_fit_calibration_recovers_factor():
    cfg = VehicleConfig()
    env = Environment()
    base = cfg.coefficients(env.rho)
    truth = build_vehicle(cfg, env, apply_calibration(base, {"N_rr": 1.8}))
    cmds = CommandLog(np.array([0.0, 4.0, 8.0, 12.0]),
                      np.array([[20, -20, 0, 20, -20], [-20, 20, 0, -20, 20], [25, -10, 0, 0, 0], [0, 0, 0, 0, 0]],
                               float))
    measured = replay(cmds, truth, initial_state())
    fit = fit_calibration(cfg, env, cmds, measured, ["N_rr"], sweeps=1)
    assert fit.factors["N_rr"] == pytest.approx(1.8, rel=1e-3)
