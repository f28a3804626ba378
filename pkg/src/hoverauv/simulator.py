"""Fixed-step closed-loop and replay simulation of the vehicle.

Dynamics advance with RK4 at ``dt``; the autopilot and allocator run every
``control_period`` and their thruster speed commands are held in between.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .allocation import allocate, vehicle_problem
from .coefficients import CalibrationFactors, CoefficientSet, apply_calibration
from .config import SimulationOptions, VehicleConfig
from .environment import Environment
from .errors import MissionComplete, MissionTimeout, NoOverlap, NumericalBlowup
from .guidance import (
    CONTROLLERS, ControllerGains, GuidanceState, InnerLoops, PathSegment, Setpoints, path_follow_step,
)
from .kernels import KernelParams, get_kernel
from .kernels.layout import DAMP_NAMES, NX, N_THRUSTERS
from .logs import CommandLog, TrajectoryLog
from .mission import MissionPlan
from .propulsion import delivered_thrust, kernel_tables, thrust_limits, thrust_to_speed, \
    thruster_configuration_matrix
from .vehicle import Pose, VehicleModel, rotation_matrix, wrap_angle

COMPARE_CHANNELS = ("u", "v", "w", "p", "q", "r", "z", "psi", "theta", "phi")
ANGLE_CHANNELS = ("phi", "theta", "psi")
LATERAL_THRUSTERS = (3, 4)


@dataclass(frozen=True)
class Vehicle:
    """A configured vehicle in a given environment, ready to integrate."""

    config: VehicleConfig
    env: Environment
    coeffs: CoefficientSet
    model: VehicleModel
    B: np.ndarray
    params: KernelParams


def build_vehicle(cfg: VehicleConfig | None = None, env: Environment | None = None,
                  coeffs: CoefficientSet | None = None) -> Vehicle:
    cfg = cfg or VehicleConfig()
    env = env or Environment()
    coeffs = coeffs or cfg.coefficients(env.rho)
    mp = cfg.mass.properties(env.rho, env.gravity)
    model = VehicleModel(coeffs, mp)
    B = thruster_configuration_matrix(cfg.geometry)
    thr, kt_J, kt_val, kt_len = kernel_tables(cfg.thrusters)
    damp = np.array([coeffs.get(n) for n in DAMP_NAMES])
    rest = np.array([mp.weight, mp.buoyancy, *mp.r_g, *mp.r_b])
    jet = 0.5 * env.rho * mp.volume ** (2.0 / 3.0) * cfg.jet_cd
    envp = np.array([env.rho, cfg.lag, jet, 1.0 if cfg.roll_torque else 0.0])
    params = KernelParams(model.M_inv, model.M_A, model.M_RB, damp, rest, env.current_vector.copy(),
                          thr, B, envp, kt_J, kt_val, kt_len)
    return Vehicle(cfg, env, coeffs, model, B, params)


@dataclass
class SimState:
    t: float
    x: np.ndarray

    @property
    def pose(self) -> Pose:
        return Pose.from_array(self.x[0:6])

    @property
    def eta(self) -> np.ndarray:
        return self.x[0:6]

    @property
    def nu(self) -> np.ndarray:
        return self.x[6:12]

    @property
    def n(self) -> np.ndarray:
        return self.x[12:17]


def initial_state(eta=None, nu=None, n=None, t: float = 0.0) -> SimState:
    x = np.zeros(NX)
    if eta is not None:
        x[0:6] = eta
    if nu is not None:
        x[6:12] = nu
    if n is not None:
        x[12:17] = n
    x[3:6] = wrap_angle(x[3:6])
    return SimState(t, x)


def step(state: SimState, commands, vehicle: Vehicle, dt: float, nsteps: int = 1, kernel=None) -> SimState:
    """Advance ``nsteps`` RK4 steps of ``dt`` under constant thruster speed commands."""
    if not 0.0 < dt <= 0.1:
        raise ValueError("dt must be in (0, 0.1]")
    kernel = kernel or get_kernel()
    x, ok = kernel.rk4_advance(state.x, np.asarray(commands, float), nsteps, dt, vehicle.params)
    if not ok:
        raise NumericalBlowup(f"state left the valid range near t = {state.t + nsteps * dt:.3f} s")
    return SimState(state.t + nsteps * dt, x)


def relative_surge(x, vehicle: Vehicle) -> float:
    R = rotation_matrix(x[3], x[4], x[5])
    return float(x[6] - (R.T @ vehicle.params.vc)[0])


def commanded_thrust(n, u_r: float, vehicle: Vehicle) -> np.ndarray:
    return np.array([delivered_thrust(s, ni, u_r, vehicle.env.rho) for s, ni in zip(vehicle.config.thrusters, n)])


def thrusts_to_commands(f, u_r: float, vehicle: Vehicle) -> np.ndarray:
    return np.array([thrust_to_speed(s, fi, u_r, vehicle.env.rho) for s, fi in zip(vehicle.config.thrusters, f)])


def demand_envelope(vehicle: Vehicle, use_lateral: bool = True) -> np.ndarray:
    """Largest (X, Y, Z, N) magnitudes the thrusters can produce at rest."""
    lim = np.array([thrust_limits(s, 0.0, vehicle.env.rho) for s in vehicle.config.thrusters])
    top = np.minimum(-lim[:, 0], lim[:, 1])
    B = vehicle.B[[0, 1, 2, 5]].copy()
    if not use_lateral:
        B[:, list(LATERAL_THRUSTERS)] = 0.0
    return np.abs(B) @ top


@dataclass
class MissionResult:
    log: TrajectoryLog
    metrics: dict
    completed: bool
    plan: MissionPlan | None = field(default=None, repr=False)


def compute_metrics(log: TrajectoryLog) -> dict:
    if len(log) == 0:
        return {"rms_cross_track_m": 0.0, "max_roll_deg": 0.0, "duration_s": 0.0, "distance_m": 0.0}
    e = log.e[np.isfinite(log.e)]
    xy = log.eta[:, :2]
    return {
        "rms_cross_track_m": float(np.sqrt(np.mean(e**2))) if e.size else float("nan"),
        "max_roll_deg": float(np.degrees(np.max(np.abs(log.eta[:, 3])))),
        "duration_s": float(log.t[-1] - log.t[0]),
        "distance_m": float(np.sum(np.hypot(*np.diff(xy, axis=0).T))) if len(log) > 1 else 0.0,
    }


class _Recorder:
    def __init__(self):
        self.rows, self.modes, self.cmd_t, self.cmd_n = [], [], [], []

    def record(self, t, x, tau, f, mode, e, ev):
        self.rows.append(np.concatenate(([t], x[:12], tau, f, [e, ev])))
        self.modes.append(mode)

    def command(self, t, n):
        self.cmd_t.append(t)
        self.cmd_n.append(np.array(n, float))

    def log(self) -> TrajectoryLog:
        if not self.rows:
            return TrajectoryLog.empty()
        a = np.array(self.rows)
        commands = CommandLog(np.array(self.cmd_t), np.array(self.cmd_n)) if self.cmd_t else None
        return TrajectoryLog(a[:, 0], a[:, 1:7], a[:, 7:13], a[:, 13:19], a[:, 19:24], self.modes,
                             a[:, 24], a[:, 25], commands)


class Autopilot:
    """Guidance, inner loops and allocation for one vehicle and plan.

    ``controller="original"`` follows the heading law only and allocates to
    the horizontal pair and the vertical thruster; ``"modified"`` adds the
    sway mode and the lateral thrusters with speed-scheduled weights.
    """

    def __init__(self, vehicle: Vehicle, plan: MissionPlan, gains: ControllerGains | None = None,
                 controller: str = "modified"):
        if controller not in CONTROLLERS:
            raise ValueError(f"controller must be one of {CONTROLLERS}")
        self.vehicle = vehicle
        self.plan = plan
        self.gains = gains or ControllerGains()
        self.controller = controller
        wp = plan.waypoints
        self.segments = [PathSegment(wp[i, :2], wp[i + 1, :2]) for i in range(wp.shape[0] - 1)]
        self.state = GuidanceState()
        use_lateral = controller == "modified"
        self.disabled = () if use_lateral else LATERAL_THRUSTERS
        self.loops = InnerLoops(self.gains, demand_envelope(vehicle, use_lateral), use_sway=use_lateral)

    def vertical_reference(self, x) -> float:
        seg = min(self.state.segment, len(self.segments) - 1)
        target = self.plan.waypoints[seg + 1, 2]
        if self.plan.vertical_mode == "depth":
            return target
        return self.vehicle.env.seabed.depth_at(x[0], x[1]) - target

    def update(self, x, dt: float):
        """Thrust vector, allocated generalized force and setpoints for state ``x``."""
        psi_req, v_req, u_req = path_follow_step(self.state, x[0:2], x[5], x[7], self.segments, self.gains,
                                                 dt, self.plan.speed, self.controller)
        sp = Setpoints(psi_req, v_req, u_req)
        R = rotation_matrix(x[3], x[4], x[5])
        z_dot = float((R @ x[6:9])[2])
        demand = self.loops.update(sp, x[0:6], x[6:12], z_dot, self.vertical_reference(x), dt)
        if self.controller == "original":
            demand[1] = 0.0
        u_r = relative_surge(x, self.vehicle)
        problem = vehicle_problem(demand, self.vehicle.B, self.vehicle.config.thrusters, u_r,
                                  self.vehicle.config.weights, self.vehicle.config.epsilon,
                                  self.vehicle.env.rho, self.disabled)
        f = allocate(problem).f_th
        for j in self.disabled:
            f[j] = 0.0
        return f, self.vehicle.B @ f, sp


def start_state(plan: MissionPlan, vehicle: Vehicle) -> SimState:
    wp = plan.waypoints
    beta = math.atan2(wp[1, 1] - wp[0, 1], wp[1, 0] - wp[0, 0])
    if plan.vertical_mode == "depth":
        z = wp[1, 2]
    else:
        z = vehicle.env.seabed.depth_at(wp[0, 0], wp[0, 1]) - wp[1, 2]
    return initial_state(eta=[wp[0, 0], wp[0, 1], z, 0.0, 0.0, beta])


def run_mission(plan: MissionPlan, vehicle: Vehicle | None = None, gains: ControllerGains | None = None,
                controller: str = "modified", options: SimulationOptions | None = None,
                state: SimState | None = None) -> MissionResult:
    """Closed-loop run until the last waypoint.

    Raises MissionTimeout carrying the partial result when the run exceeds
    ``timeout_factor`` times the nominal duration plus ``timeout_margin``.
    """
    vehicle = vehicle or build_vehicle()
    opts = options or SimulationOptions()
    if plan.waypoints.shape[0] < 2:
        log = TrajectoryLog.empty()
        return MissionResult(log, compute_metrics(log), True, plan)
    kernel = get_kernel(opts.kernel)
    pilot = Autopilot(vehicle, plan, gains, controller)
    state = state or start_state(plan, vehicle)
    t_max = state.t + opts.timeout_factor * plan.path_length / plan.speed + opts.timeout_margin
    period, k = opts.dt * opts.substeps, opts.substeps
    rec = _Recorder()
    completed = False
    tick = 0
    t0 = state.t
    while True:
        try:
            f, tau, _ = pilot.update(state.x, period)
        except MissionComplete:
            completed = True
            break
        u_r = relative_surge(state.x, vehicle)
        n_cmd = thrusts_to_commands(f, u_r, vehicle)
        gs = pilot.state
        rec.record(state.t, state.x, tau, f, gs.mode, gs.e, gs.e_v)
        rec.command(state.t, n_cmd)
        state = step(state, n_cmd, vehicle, opts.dt, k, kernel)
        tick += 1
        state.t = t0 + tick * period
        if state.t > t_max:
            break
    if rec.cmd_t:
        # closing row marks the end of the last hold interval
        rec.command(state.t, rec.cmd_n[-1])
    log = rec.log()
    result = MissionResult(log, compute_metrics(log), completed, plan)
    if not completed:
        raise MissionTimeout(f"mission not finished after {state.t - t0:.1f} s", result)
    return result


def replay(commands: CommandLog, vehicle: Vehicle | None = None, state: SimState | None = None,
           dt: float = 0.01, log_every: int = 10, kernel: str | None = None) -> TrajectoryLog:
    """Open-loop run under recorded thruster speed commands with zero-order hold.

    Simulation starts at the first command time and stops at the last one;
    the state is logged every ``log_every`` steps.
    """
    vehicle = vehicle or build_vehicle()
    kern = get_kernel(kernel)
    t0 = float(commands.t[0])
    state = SimState(t0, (state or initial_state()).x.copy())
    nsteps = int(round((commands.t[-1] - t0) / dt))
    step_times = t0 + dt * np.arange(nsteps)
    # command row held during each step; tolerance absorbs timestamp rounding
    row = commands.index_at(step_times + 1e-9 * dt)
    rec = _Recorder()
    i = 0
    while i < nsteps:
        j = i + 1
        while j < nsteps and row[j] == row[i] and j % log_every != 0:
            j += 1
        if i % log_every == 0:
            f = commanded_thrust(commands.n[row[i]], relative_surge(state.x, vehicle), vehicle)
            rec.record(state.t, state.x, vehicle.B @ f, f, "open-loop", math.nan, math.nan)
        x, ok = kern.rk4_advance(state.x, commands.n[row[i]], j - i, dt, vehicle.params)
        if not ok:
            raise NumericalBlowup(f"state left the valid range near t = {t0 + j * dt:.3f} s")
        state = SimState(t0 + j * dt, x)
        i = j
    if nsteps % log_every == 0:
        f = commanded_thrust(commands.n[-1], relative_surge(state.x, vehicle), vehicle)
        rec.record(state.t, state.x, vehicle.B @ f, f, "open-loop", math.nan, math.nan)
    return rec.log()


@dataclass(frozen=True)
class CompareReport:
    channels: dict
    samples: int
    t_start: float
    t_end: float

    def to_dict(self) -> dict:
        return {"samples": self.samples, "t_start": self.t_start, "t_end": self.t_end,
                "channels": {k: {"rms": v[0], "max": v[1]} for k, v in self.channels.items()}}

    def to_text(self) -> str:
        lines = [f"{'channel':>8} {'rms':>12} {'max':>12}"]
        for k, (rms, mx) in self.channels.items():
            lines.append(f"{k:>8} {rms:12.6g} {mx:12.6g}")
        lines.append(f"{self.samples} samples over [{self.t_start:g}, {self.t_end:g}] s")
        return "\n".join(lines)

    def total_rms(self, channels=None) -> float:
        names = channels or self.channels.keys()
        return float(sum(self.channels[c][0] for c in names))


def compare(sim: TrajectoryLog, measured: TrajectoryLog, channels=COMPARE_CHANNELS) -> CompareReport:
    """RMS and max error per channel at the simulated times inside the common span."""
    if len(sim) == 0 or len(measured) == 0:
        raise NoOverlap("a log is empty")
    lo, hi = max(sim.t[0], measured.t[0]), min(sim.t[-1], measured.t[-1])
    mask = (sim.t >= lo) & (sim.t <= hi)
    if hi < lo or not mask.any():
        raise NoOverlap(f"time ranges [{sim.t[0]:g}, {sim.t[-1]:g}] and "
                        f"[{measured.t[0]:g}, {measured.t[-1]:g}] do not overlap")
    t = sim.t[mask]
    out = {}
    for c in channels:
        a = sim.channel(c)[mask]
        b = measured.channel(c)
        if c in ANGLE_CHANNELS:
            d = wrap_angle(a - np.interp(t, measured.t, np.unwrap(b)))
        else:
            d = a - np.interp(t, measured.t, b)
        out[c] = (float(np.sqrt(np.mean(d**2))), float(np.max(np.abs(d))))
    return CompareReport(out, int(t.size), float(t[0]), float(t[-1]))


def fit_calibration(vehicle_cfg: VehicleConfig, env: Environment, commands: CommandLog, measured: TrajectoryLog,
                    names, state: SimState | None = None, channels=("u", "v", "w", "p", "q", "r"),
                    sweeps: int = 3, bounds: tuple = (0.2, 5.0), dt: float = 0.01) -> CalibrationFactors:
    """Coordinate descent over calibration factors of ``names`` minimising replay error.

    Each factor is searched on a log scale within ``bounds``; the objective
    is the summed RMS of ``channels`` between replay and ``measured``.
    """
    base = vehicle_cfg.coefficients(env.rho)
    factors = {n: 1.0 for n in names}

    def cost(fs):
        v = build_vehicle(vehicle_cfg, env, apply_calibration(base, CalibrationFactors(fs)))
        try:
            sim = replay(commands, v, state, dt)
        except NumericalBlowup:
            return math.inf
        return compare(sim, measured, channels).total_rms()

    for _ in range(sweeps):
        for n in names:
            def f1(logk, n=n):
                return cost({**factors, n: math.exp(logk)})

            res = minimize_scalar(f1, bounds=tuple(math.log(b) for b in bounds), method="bounded",
                                  options={"xatol": 1e-4})
            factors[n] = math.exp(res.x)
    return CalibrationFactors(factors)
