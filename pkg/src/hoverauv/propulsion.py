"""Thruster models and the thruster configuration matrix.

Thruster order is fixed: 1 and 2 are the horizontal open propellers, 3 the
vertical tunnel thruster, 4 and 5 the nose and tail lateral tunnel thrusters.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import lambertw

from .errors import DimensionMismatch, OverSpeed, WrongKind
from .hydro import VehicleGeometry
from .kernels.layout import (
    KIND_OPEN, KIND_TUNNEL, N_THRUSTERS, T_ASTERN, T_ATH, T_CJET, T_COLS, T_D,
    T_KIND, T_KQ, T_KT, T_KTSCALE, T_ROTDIR, T_TD, T_WT,
)
from .vehicle import GeneralizedForce

KINDS = ("open", "tunnel")


@dataclass(frozen=True)
class ThrusterSpec:
    """Propeller constants and mounting of one thruster.

    ``rot_dir`` is the sign of the shaft reaction torque on the hull about
    the body x axis per unit positive ``n``; 0 removes the thruster from the
    roll-torque model. ``kt_table`` optionally gives k_t against advance
    ratio J as ``((J, k_t), ...)`` for open propellers.
    """

    id: int
    kind: str
    D: float
    k_t: float
    k_q: float
    n_max: float
    w_T: float = 0.0
    t_d: float = 0.0
    C_jet: float = 0.0
    A_th: float = 0.0
    position: tuple = (0.0, 0.0, 0.0)
    direction: tuple = (1.0, 0.0, 0.0)
    rot_dir: float = 0.0
    kt_scale: float = 1.0
    astern: float = 1.0
    kt_table: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"thruster {self.id}: kind must be one of {KINDS}")
        if not self.D > 0.0:
            raise ValueError(f"thruster {self.id}: D must be > 0")
        if not self.n_max > 0.0:
            raise ValueError(f"thruster {self.id}: n_max must be > 0")
        if not 0.0 <= self.w_T < 1.0:
            raise ValueError(f"thruster {self.id}: wake fraction must be in [0, 1)")
        if not 0.0 <= self.t_d < 1.0:
            raise ValueError(f"thruster {self.id}: thrust deduction must be in [0, 1)")
        if self.kind == "tunnel" and not self.A_th > 0.0:
            raise ValueError(f"thruster {self.id}: tunnel area must be > 0")
        if self.C_jet < 0.0 or self.kt_scale <= 0.0 or self.astern <= 0.0:
            raise ValueError(f"thruster {self.id}: C_jet >= 0, kt_scale > 0 and astern > 0 required")
        d = np.asarray(self.direction, float)
        if d.shape != (3,) or not math.isclose(float(np.linalg.norm(d)), 1.0, rel_tol=1e-9):
            raise ValueError(f"thruster {self.id}: direction must be a unit 3-vector")
        if self.kt_table:
            tab = np.asarray(self.kt_table, float)
            if tab.ndim != 2 or tab.shape[1] != 2 or np.any(np.diff(tab[:, 0]) <= 0.0):
                raise ValueError(f"thruster {self.id}: kt_table must be ((J, k_t), ...) with increasing J")
        object.__setattr__(self, "position", tuple(float(v) for v in self.position))
        object.__setattr__(self, "direction", tuple(float(v) for v in self.direction))
        object.__setattr__(self, "kt_table", tuple(tuple(map(float, r)) for r in self.kt_table))


def default_thrusters(geom: VehicleGeometry | None = None) -> tuple[ThrusterSpec, ...]:
    """Thruster set of the reference vehicle.

    The port/starboard placement of thrusters 1 and 2 follows the sign of
    their yaw column in the configuration matrix (+y_th for thruster 1).
    """
    g = geom or VehicleGeometry()
    xh = 0.5 * (g.x_1 + g.x_2)
    horiz = dict(kind="open", D=0.10, k_t=0.30, k_q=0.05, n_max=30.0, w_T=0.10, t_d=0.10)
    tunnel = dict(kind="tunnel", D=0.076, k_t=0.40, k_q=0.05, n_max=55.0, C_jet=2.0, A_th=g.A_th)
    return (
        ThrusterSpec(1, position=(xh, -g.y_th, 0.0), direction=(1.0, 0.0, 0.0), rot_dir=1.0, **horiz),
        ThrusterSpec(2, position=(xh, g.y_th, 0.0), direction=(1.0, 0.0, 0.0), rot_dir=-1.0, **horiz),
        ThrusterSpec(3, position=(0.0, 0.0, 0.0), direction=(0.0, 0.0, 1.0), **tunnel),
        ThrusterSpec(4, position=(g.x_th4, 0.0, 0.0), direction=(0.0, 1.0, 0.0), **tunnel),
        ThrusterSpec(5, position=(g.x_th5, 0.0, 0.0), direction=(0.0, 1.0, 0.0), **tunnel),
    )


def _check_speed(spec: ThrusterSpec, n: float) -> None:
    if abs(n) > spec.n_max * (1.0 + 1e-12):
        raise OverSpeed(f"thruster {spec.id}: |n| = {abs(n):.4g} rev/s exceeds n_max = {spec.n_max:.4g}")


def _kt(spec: ThrusterSpec, J: float | None = None) -> float:
    if spec.kt_table and J is not None:
        tab = np.asarray(spec.kt_table)
        return float(np.interp(J, tab[:, 0], tab[:, 1])) * spec.kt_scale
    return spec.k_t * spec.kt_scale


def open_water_thrust(spec: ThrusterSpec, n: float, rho: float = 1025.0) -> tuple[float, float]:
    """(T, Q) of the bare propeller at ``n`` rev/s, constant k_t."""
    _check_speed(spec, n)
    nn = n * abs(n)
    T = rho * spec.D**4 * _kt(spec) * nn
    if n < 0.0:
        T *= spec.astern
    return T, rho * spec.D**5 * spec.k_q * nn


def hull_adjusted_thrust(spec: ThrusterSpec, n: float, u: float, rho: float = 1025.0) -> float:
    """Force delivered to the hull by an open propeller at surge speed ``u``."""
    if spec.kind != "open":
        raise WrongKind(f"thruster {spec.id} is a {spec.kind} thruster, not an open propeller")
    _check_speed(spec, n)
    if n == 0.0:
        return 0.0
    J = u * (1.0 - spec.w_T) / (abs(n) * spec.D)
    T = rho * spec.D**4 * _kt(spec, J) * n * abs(n)
    if n < 0.0:
        T *= spec.astern
    return T * (1.0 - spec.t_d)


def tunnel_thrust(spec: ThrusterSpec, n: float, u: float, rho: float = 1025.0) -> float:
    """Tunnel thrust reduced by jet deflection at surge speed ``u``."""
    if spec.kind != "tunnel":
        raise WrongKind(f"thruster {spec.id} is an {spec.kind} propeller, not a tunnel thruster")
    T0, _ = open_water_thrust(spec, n, rho)
    if T0 == 0.0:
        return 0.0
    uj2 = abs(T0) / (rho * spec.A_th)
    return T0 * math.exp(-spec.C_jet * u * u / uj2)


def delivered_thrust(spec: ThrusterSpec, n: float, u: float, rho: float = 1025.0) -> float:
    if spec.kind == "open":
        return hull_adjusted_thrust(spec, n, u, rho)
    return tunnel_thrust(spec, n, u, rho)


def thrust_limits(spec: ThrusterSpec, u: float, rho: float = 1025.0) -> tuple[float, float]:
    """Delivered thrust at -n_max and +n_max."""
    return delivered_thrust(spec, -spec.n_max, u, rho), delivered_thrust(spec, spec.n_max, u, rho)


def thrust_to_speed(spec: ThrusterSpec, T: float, u: float, rho: float = 1025.0) -> float:
    """Rotational speed producing delivered thrust ``T`` at surge speed ``u``.

    Demands beyond the achievable thrust saturate at +-n_max.
    """
    if T == 0.0:
        return 0.0
    lo, hi = thrust_limits(spec, u, rho)
    if T >= hi:
        return spec.n_max
    if T <= lo:
        return -spec.n_max
    sign = 1.0 if T > 0.0 else -1.0
    gain = rho * spec.D**4 * spec.k_t * spec.kt_scale * (spec.astern if sign < 0.0 else 1.0)
    if spec.kind == "tunnel":
        # T = T0 exp(-k/|T0|) with k = C rho A u^2 inverts through Lambert W
        k = spec.C_jet * rho * spec.A_th * u * u
        t0 = abs(T) if k == 0.0 else k / float(lambertw(k / abs(T)).real)
        return sign * min(math.sqrt(t0 / gain), spec.n_max)
    if not spec.kt_table:
        return sign * min(math.sqrt(abs(T) / ((1.0 - spec.t_d) * gain)), spec.n_max)
    from scipy.optimize import brentq

    n_edge = spec.n_max if sign > 0 else -spec.n_max
    return brentq(lambda n: hull_adjusted_thrust(spec, n, u, rho) - T, 0.0, n_edge, xtol=1e-12)


def tunnel_jet_drag(volume: float, C_d_th: float, u: float, rho: float = 1025.0,
                    tunnel_active: bool = True) -> float:
    """Extra axial drag while any tunnel thruster runs, -1/2 rho V^(2/3) C_d u|u|."""
    if not tunnel_active:
        return 0.0
    return -0.5 * rho * volume ** (2.0 / 3.0) * C_d_th * u * abs(u)


def thruster_configuration_matrix(geom: VehicleGeometry) -> np.ndarray:
    """6x5 map from thruster forces to (X, Y, Z, K, M, N)."""
    B = np.zeros((6, N_THRUSTERS))
    B[0, 0] = B[0, 1] = 1.0
    B[1, 3] = B[1, 4] = 1.0
    B[2, 2] = 1.0
    B[5, 0] = geom.y_th
    B[5, 1] = -geom.y_th
    B[5, 3] = geom.x_th4
    B[5, 4] = geom.x_th5
    return B


def forces_to_tau(f, geom_or_B) -> GeneralizedForce:
    """Generalized force B f."""
    B = geom_or_B if isinstance(geom_or_B, np.ndarray) else thruster_configuration_matrix(geom_or_B)
    f = np.asarray(f, float).ravel()
    if f.shape[0] != B.shape[1]:
        raise DimensionMismatch(f"thrust vector has {f.shape[0]} entries, configuration matrix needs {B.shape[1]}")
    return GeneralizedForce.from_array(B @ f)


def propeller_torque_moment(specs, n, rho: float = 1025.0) -> float:
    """Roll moment from shaft reaction torques, sum of rot_dir * Q."""
    n = np.asarray(n, float).ravel()
    if n.shape[0] != len(specs):
        raise DimensionMismatch(f"{n.shape[0]} speeds for {len(specs)} thrusters")
    total = 0.0
    for spec, ni in zip(specs, n):
        if spec.rot_dir != 0.0:
            total += spec.rot_dir * open_water_thrust(spec, ni, rho)[1]
    return total


def kernel_tables(specs) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Packed thruster parameters and k_t(J) tables for the integration kernel."""
    specs = list(specs)
    thr = np.zeros((len(specs), T_COLS))
    width = max([len(s.kt_table) for s in specs] + [1])
    kt_J = np.zeros((len(specs), width))
    kt_val = np.zeros((len(specs), width))
    kt_len = np.zeros(len(specs), dtype=np.int64)
    for i, s in enumerate(specs):
        thr[i, T_KIND] = KIND_OPEN if s.kind == "open" else KIND_TUNNEL
        thr[i, T_D] = s.D
        thr[i, T_KT] = s.k_t
        thr[i, T_KQ] = s.k_q
        thr[i, T_WT] = s.w_T
        thr[i, T_TD] = s.t_d if s.kind == "open" else 0.0
        thr[i, T_CJET] = s.C_jet if s.kind == "tunnel" else 0.0
        thr[i, T_ATH] = s.A_th
        thr[i, T_KTSCALE] = s.kt_scale
        thr[i, T_ASTERN] = s.astern
        thr[i, T_ROTDIR] = s.rot_dir
        if s.kt_table and s.kind == "open":
            tab = np.asarray(s.kt_table)
            kt_len[i] = tab.shape[0]
            kt_J[i, :tab.shape[0]] = tab[:, 0]
            kt_val[i, :tab.shape[0]] = tab[:, 1]
    return thr, kt_J, kt_val, kt_len
