"""Line-of-sight path following with the sway-augmented mode.

Earth frame is North-East-Down with ``x`` North and ``y`` East; a positive
cross-track error means the vehicle is to starboard of the path direction.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import MissionComplete
from .vehicle import wrap_angle

HEADING_LOS = "heading-LOS"
SWAY_LOS = "sway-LOS"
CONTROLLERS = ("original", "modified")


@dataclass(frozen=True)
class PathSegment:
    start: tuple
    end: tuple

    def __post_init__(self):
        a = tuple(float(v) for v in np.asarray(self.start, float).ravel()[:2])
        b = tuple(float(v) for v in np.asarray(self.end, float).ravel()[:2])
        if len(a) != 2 or len(b) != 2:
            raise ValueError("segment endpoints need North and East coordinates")
        if a == b:
            raise ValueError("segment start and end coincide")
        object.__setattr__(self, "start", a)
        object.__setattr__(self, "end", b)

    @property
    def beta(self) -> float:
        return math.atan2(self.end[1] - self.start[1], self.end[0] - self.start[0])

    @property
    def length(self) -> float:
        return math.hypot(self.end[0] - self.start[0], self.end[1] - self.start[1])


def along_track(pos, seg: PathSegment) -> float:
    """Distance travelled along the segment from its start, by projection."""
    b = seg.beta
    return math.cos(b) * (pos[0] - seg.start[0]) + math.sin(b) * (pos[1] - seg.start[1])


def cross_track(pos, seg: PathSegment, psi: float | None = None) -> tuple[float, float]:
    """Signed cross-track error ``e`` and its lateral component ``e_v``.

    ``e_v = e cos(beta - psi)``; without a heading the vehicle is taken to be
    aligned with the path.
    """
    b = seg.beta
    e = -math.sin(b) * (pos[0] - seg.start[0]) + math.cos(b) * (pos[1] - seg.start[1])
    if psi is None:
        return e, e
    return e, e * math.cos(b - psi)


def los_heading(pos, seg: PathSegment, delta_h: float) -> float:
    """Heading toward the point ``delta_h`` ahead of the vehicle's projection on the segment."""
    if not delta_h > 0.0:
        raise ValueError("look-ahead distance must be positive")
    b = seg.beta
    s = min(along_track(pos, seg) + delta_h, seg.length)
    tx = seg.start[0] + s * math.cos(b)
    ty = seg.start[1] + s * math.sin(b)
    return math.atan2(ty - pos[1], tx - pos[0])


@dataclass(frozen=True)
class PIDGains:
    kp: float = 0.0
    ki: float = 0.0
    kd: float = 0.0
    # bound on the integral contribution ki * integral
    i_limit: float = math.inf

    def __post_init__(self):
        if min(self.kp, self.ki, self.kd) < 0.0 or not self.i_limit >= 0.0:
            raise ValueError("PID gains and integral limit must be >= 0")


@dataclass(frozen=True)
class ControllerGains:
    """Outer sway law, inner loops and mode switching thresholds."""

    sway: PIDGains = PIDGains(kp=0.4, ki=0.02, kd=0.5, i_limit=0.15)
    v_max: float = 0.3
    accel_filter_tc: float = 0.5
    surge: PIDGains = PIDGains(kp=100.0, ki=10.0, i_limit=30.0)
    sway_velocity: PIDGains = PIDGains(kp=150.0, ki=30.0, i_limit=50.0)
    heading: PIDGains = PIDGains(kp=20.0, ki=1.0, kd=20.0, i_limit=5.0)
    depth: PIDGains = PIDGains(kp=100.0, ki=5.0, kd=150.0, i_limit=20.0)
    e_on: float = 1.0
    e_off: float = 0.5
    delta_h: float = 3.2

    def __post_init__(self):
        if not 0.0 < self.e_off < self.e_on:
            raise ValueError("switching thresholds need 0 < e_off < e_on")
        if not self.delta_h > 0.0 or not self.v_max > 0.0 or self.accel_filter_tc < 0.0:
            raise ValueError("delta_h and v_max must be > 0, accel_filter_tc >= 0")


def _clamp(x: float, limit: float) -> float:
    return min(max(x, -limit), limit)


def sway_pid(e_v: float, v_dot: float, gains: ControllerGains, dt: float,
             integral: float = 0.0) -> tuple[float, float]:
    """Requested sway speed ``k_P e_v + k_I int(e_v) + k_D v_dot`` and the updated integral.

    The integral contribution is clamped to ``gains.sway.i_limit`` and the
    output to ``gains.v_max``.
    """
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    g = gains.sway
    integral += e_v * dt
    if g.ki > 0.0:
        integral = _clamp(integral, g.i_limit / g.ki)
    v_req = g.kp * e_v + g.ki * integral + g.kd * v_dot
    return _clamp(v_req, gains.v_max), integral


@dataclass
class GuidanceState:
    mode: str | None = None
    e: float = 0.0
    e_v: float = 0.0
    segment: int = 0
    sway_integral: float = 0.0
    v_prev: float | None = None
    v_dot: float = 0.0


@dataclass(frozen=True)
class Setpoints:
    psi: float
    v: float
    u: float
    z: float | None = None
    altitude: float | None = None


def switch_mode(mode: str | None, e: float, gains: ControllerGains) -> str:
    """Hysteresis between the two modes on |e|."""
    a = abs(e)
    if mode is None:
        return SWAY_LOS if a < gains.e_on else HEADING_LOS
    if mode == SWAY_LOS and a > gains.e_on:
        return HEADING_LOS
    if mode == HEADING_LOS and a < gains.e_off:
        return SWAY_LOS
    return mode


def path_follow_step(state: GuidanceState, pos, psi: float, v: float, segments, gains: ControllerGains,
                     dt: float, speed: float, controller: str = "modified") -> tuple[float, float, float]:
    """One guidance update; returns (psi_req, v_req, u_req).

    Advances ``state.segment`` past finished segments and raises
    MissionComplete after the last one.
    """
    while state.segment < len(segments) and along_track(pos, segments[state.segment]) >= segments[state.segment].length:
        state.segment += 1
        state.sway_integral = 0.0
    if state.segment >= len(segments):
        raise MissionComplete("final waypoint reached")
    seg = segments[state.segment]
    e, e_v = cross_track(pos, seg, psi)
    state.e, state.e_v = e, e_v

    if state.v_prev is not None:
        raw = (v - state.v_prev) / dt
        a = dt / (gains.accel_filter_tc + dt)
        state.v_dot += a * (raw - state.v_dot)
    state.v_prev = v

    if controller == "original":
        state.mode = HEADING_LOS
    else:
        previous = state.mode
        state.mode = switch_mode(state.mode, e, gains)
        if state.mode == SWAY_LOS and previous != SWAY_LOS:
            state.sway_integral = 0.0

    if state.mode == SWAY_LOS:
        psi_req = wrap_angle(seg.beta)
        # positive e_v (starboard) must demand a port-ward sway speed
        v_req, state.sway_integral = sway_pid(-e_v, -state.v_dot, gains, dt, state.sway_integral)
    else:
        psi_req = wrap_angle(los_heading(pos, seg, gains.delta_h))
        v_req = 0.0
    u_req = speed * max(0.0, math.cos(wrap_angle(psi_req - psi)))
    return psi_req, v_req, u_req


class PID:
    """Discrete PID with integral clamping and output saturation.

    The derivative term acts on a supplied rate of the measured signal, so a
    setpoint step does not kick the output.
    """

    def __init__(self, gains: PIDGains, limit: float = math.inf):
        self.gains = gains
        self.limit = limit
        self.integral = 0.0

    def reset(self) -> None:
        self.integral = 0.0

    def update(self, error: float, dt: float, rate: float = 0.0) -> float:
        g = self.gains
        self.integral += error * dt
        if g.ki > 0.0:
            self.integral = _clamp(self.integral, g.i_limit / g.ki)
        return _clamp(g.kp * error + g.ki * self.integral - g.kd * rate, self.limit)


@dataclass
class InnerLoops:
    """Surge, sway, heave and yaw loops producing the demand on (X, Y, Z, N).

    ``envelope`` bounds each demand channel; the sway loop is disabled when
    the lateral thrusters are unused.
    """

    gains: ControllerGains
    envelope: np.ndarray = field(default_factory=lambda: np.array([50.0, 80.0, 40.0, 20.0]))
    use_sway: bool = True

    def __post_init__(self):
        env = np.asarray(self.envelope, float)
        self.envelope = env
        self.surge = PID(self.gains.surge, env[0])
        self.sway = PID(self.gains.sway_velocity, env[1])
        self.depth = PID(self.gains.depth, env[2])
        self.heading = PID(self.gains.heading, env[3])

    def update(self, sp: Setpoints, eta, nu, z_dot: float, z_ref: float, dt: float) -> np.ndarray:
        """Demand (X, Y, Z, N) for setpoints ``sp``; ``z_ref`` is the depth to hold."""
        u, v, r = nu[0], nu[1], nu[5]
        X = self.surge.update(sp.u - u, dt)
        Y = self.sway.update(sp.v - v, dt) if self.use_sway else 0.0
        Z = self.depth.update(z_ref - eta[2], dt, z_dot)
        N = self.heading.update(wrap_angle(sp.psi - eta[5]), dt, r)
        return np.array([X, Y, Z, N])


def inner_loops(setpoints: Setpoints, eta, nu, gains: ControllerGains, dt: float,
                loops: InnerLoops | None = None, z_dot: float = 0.0) -> np.ndarray:
    """Demand from fresh (zero-integrator) loops unless ``loops`` carries state."""
    loops = loops or InnerLoops(gains)
    z_ref = setpoints.z if setpoints.z is not None else eta[2]
    return loops.update(setpoints, eta, nu, z_dot, z_ref, dt)
