"""Semi-analytical hydrodynamic coefficients from vehicle geometry.

Conventions: body x forward from the centre of buoyancy, so the nose station
``x_n`` is the largest coordinate and the tail end ``x_3`` the smallest. Moment
terms use the lever arms of the body frame (N = x Y, M = z X - x Z,
K = y Z - z Y), which fixes their signs.

Each vehicle part contributes a partial coefficient dictionary; the vehicle
estimate is their sum (superposition of hull, horizontal thruster bodies,
mast, mounts and tunnel openings).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .coefficients import ALL_NAMES, CoefficientSet
from .errors import IntegrationTooCoarse, InvalidGeometry, ReynoldsOutOfRange

CD_CYLINDER_2D = 1.2
RE_MIN = 1e4
CONVERGENCE_TOL = 0.005


@dataclass(frozen=True)
class VehicleGeometry:
    """Vehicle dimensions [m]. Defaults describe the reference vehicle.

    ``profile`` is a piecewise-linear hull radius table ``((x, r), ...)``
    running from the tail end ``x_3`` to the nose ``x_n``; when empty a torpedo
    profile is generated from ``nose_length``, ``tail_length`` and
    ``tail_radius``. The horizontal thrusters and their mounts occupy
    ``[x_2, x_1]``; ``x_mast`` is the mast station.
    """

    l_h: float = 1.6
    d_h: float = 0.23
    l_th: float = 0.30
    d_th: float = 0.135
    w_m: float = 0.03
    h_m: float = 0.20
    c_m: float = 0.08
    x_n: float = 0.826
    x_1: float = -0.40
    x_2: float = -0.70
    x_3: float = -0.774
    b: float = 0.17
    y_th: float = 0.2375
    x_th4: float = 0.55
    x_th5: float = -0.60
    A_th: float = 0.00785
    x_mast: float = -0.45
    mount_chord: float = 0.10
    mount_thickness: float = 0.012
    cd_mast_axial: float = 0.1
    cd_mast_cross: float = 1.2
    cd_mount_axial: float = 0.1
    cd_mount_cross: float = 1.2
    tunnel_cd_area: float = 0.0
    nose_length: float = 0.12
    tail_length: float = 0.20
    tail_radius: float = 0.07
    profile: tuple = ()

    def __post_init__(self):
        if not (self.l_h > 0.0 and self.d_h > 0.0):
            raise InvalidGeometry("hull length and diameter must be > 0")
        if not self.x_3 < self.x_2 < self.x_1 < self.x_n:
            raise InvalidGeometry(
                f"stations must satisfy x_3 < x_2 < x_1 < x_n, got "
                f"{self.x_3}, {self.x_2}, {self.x_1}, {self.x_n}")
        if abs((self.x_n - self.x_3) - self.l_h) > 1e-3:
            raise InvalidGeometry(f"x_n - x_3 = {self.x_n - self.x_3:.4f} does not match l_h = {self.l_h}")
        for name in ("l_th", "d_th", "w_m", "h_m", "c_m", "b", "y_th", "A_th", "mount_chord",
                     "mount_thickness", "cd_mast_axial", "cd_mast_cross", "cd_mount_axial",
                     "cd_mount_cross", "tunnel_cd_area", "nose_length", "tail_length", "tail_radius"):
            if getattr(self, name) < 0.0:
                raise InvalidGeometry(f"{name} must be >= 0")
        if self.l_th > 0.0 and self.d_th > self.l_th:
            raise InvalidGeometry("thruster body: d_th > l_th")
        prof = self.profile_table()
        xs, rs = prof[:, 0], prof[:, 1]
        if np.any(np.diff(xs) <= 0.0):
            raise InvalidGeometry("hull profile x values must be strictly increasing")
        if abs(xs[0] - self.x_3) > 1e-9 or abs(xs[-1] - self.x_n) > 1e-9:
            raise InvalidGeometry("hull profile must run from x_3 to x_n")
        if np.any(rs < 0.0) or np.any(rs > self.d_h / 2 + 1e-12):
            raise InvalidGeometry("hull profile radius must lie in [0, d_h/2]")

    def profile_table(self) -> np.ndarray:
        if self.profile:
            return np.asarray(self.profile, dtype=float).reshape(-1, 2)
        return default_profile(self)

    def radius(self, x) -> np.ndarray:
        prof = self.profile_table()
        return np.interp(x, prof[:, 0], prof[:, 1])

    @property
    def mast_lever(self) -> float:
        """Distance from the hull axis to the mast centre of area."""
        return 0.5 * (self.d_h + self.h_m)


def default_profile(geom: VehicleGeometry, n_nose: int = 33) -> np.ndarray:
    """Ellipsoidal nose, cylindrical midbody and conical tail."""
    R = geom.d_h / 2
    ln = min(geom.nose_length, 0.5 * geom.l_h)
    lt = min(geom.tail_length, 0.5 * geom.l_h)
    rt = min(geom.tail_radius, R)
    pts = []
    if lt > 0.0:
        pts.append((geom.x_3, rt))
    x_mid_aft = geom.x_3 + lt
    x_mid_fwd = geom.x_n - ln
    pts.append((x_mid_aft, R))
    if x_mid_fwd > x_mid_aft:
        pts.append((x_mid_fwd, R))
    if ln > 0.0:
        s = np.linspace(0.0, 1.0, n_nose)[1:]
        for si in s:
            pts.append((x_mid_fwd + si * ln, R * math.sqrt(max(0.0, 1.0 - si * si))))
    table = np.array(pts, dtype=float)
    if lt == 0.0:
        table[0, 0] = geom.x_3
    return table


@dataclass(frozen=True)
class HydroOptions:
    """Estimator settings.

    ``lift_moment`` selects the pitch lift moment sign: ``"lever"`` uses the
    body-frame lever arm (M_uw = -x_cp Z_uw), ``"ratio"`` the direct ratio
    M_uw = x_cp Z_uw.
    """

    reference_speed: float = 0.2
    viscosity: float = 1.0e-6
    n_strips: int = 200
    check_convergence: bool = True
    lift_moment: str = "lever"

    def __post_init__(self):
        if not self.reference_speed > 0.0:
            raise ValueError("reference speed must be > 0")
        if self.lift_moment not in ("lever", "ratio"):
            raise ValueError("lift_moment must be 'lever' or 'ratio'")
        if self.n_strips < 8:
            raise ValueError("n_strips must be >= 8")


# ---------------------------------------------------------------- added mass

def ellipsoid_axial_added_mass(l: float, d: float, rho: float) -> float:
    """Axial added mass [kg] of a prolate spheroid of length l and diameter d."""
    if not d > 0.0:
        raise InvalidGeometry(f"ellipsoid diameter must be > 0, got {d}")
    if d > l:
        raise InvalidGeometry(f"ellipsoid diameter {d} exceeds length {l}")
    m_e = 4.0 / 3.0 * math.pi * rho * (l / 2) * (d / 2) ** 2
    e2 = 1.0 - (d / l) ** 2
    e = math.sqrt(e2)
    if e < 0.1:
        # (atanh(e) - e) / e^3 = sum e^2k / (2k + 3); the closed form cancels near the sphere
        alpha0 = 2.0 * (1.0 - e2) * sum(e2**k / (2 * k + 3) for k in range(10))
    else:
        alpha0 = 2.0 * (1.0 - e2) / e**3 * (math.atanh(e) - e)
    return -alpha0 / (2.0 - alpha0) * m_e


def mast_added_mass(geom: VehicleGeometry, rho: float) -> tuple[float, float, float]:
    """(X_udot, M_udot, Y_vdot) of the mast treated as an elliptic rod.

    The pitch term is the axial added mass times the lever arm above the
    hull axis, signed by the body frame (positive for a mast on top).
    """
    x = -0.25 * math.pi * rho * geom.w_m**2 * geom.h_m
    y = -0.25 * math.pi * rho * geom.c_m**2 * geom.h_m
    m = -geom.mast_lever * x
    return x, m, y


def _mast_z(geom: VehicleGeometry, n: int):
    """Strip midpoints (z, negative = above the axis) and heights over the mast."""
    z0 = -geom.d_h / 2
    edges = np.linspace(z0, z0 - geom.h_m, n + 1)
    return 0.5 * (edges[1:] + edges[:-1]), np.abs(np.diff(edges))


def mast_roll_added_mass(geom: VehicleGeometry, rho: float, n: int = 200) -> tuple[float, float, float]:
    """(K_vdot, K_pdot, N_pdot) from the lateral added mass of the mast strips."""
    a = -0.25 * math.pi * rho * geom.c_m**2
    z, dz = _mast_z(geom, n)
    k_v = float(np.sum(a * (-z) * dz))
    k_p = float(np.sum(a * z**2 * dz))
    return k_v, k_p, geom.x_mast * k_v


def _segments(geom: VehicleGeometry, n: int):
    """Midpoints and widths over [x_3, x_2], [x_2, x_1], [x_1, x_n].

    Profile breakpoints are added to the strip edges so the radius is linear
    inside every strip.
    """
    bounds = ((geom.x_3, geom.x_2), (geom.x_2, geom.x_1), (geom.x_1, geom.x_n))
    breaks = geom.profile_table()[:, 0]
    out = []
    for a, b in bounds:
        k = max(4, int(round(n * (b - a) / (geom.x_n - geom.x_3))))
        inner = breaks[(breaks > a) & (breaks < b)]
        edges = np.unique(np.concatenate((np.linspace(a, b, k + 1), inner)))
        out.append((0.5 * (edges[1:] + edges[:-1]), np.diff(edges)))
    return out


def finned_strip_added_mass(r, b: float, rho: float):
    """Added mass per unit length of a circular section with two fins of tip radius b."""
    r = np.asarray(r, float)
    if b <= 0.0:
        return -math.pi * rho * r**2
    finned = -math.pi * rho * (b**2 - r**2 + r**4 / b**2)
    return np.where(r < b, finned, -math.pi * rho * r**2)


def _hull_added_mass(geom: VehicleGeometry, rho: float, n: int) -> dict:
    segs = _segments(geom, n)
    out = dict.fromkeys(("Y_vdot", "N_vdot", "N_rdot", "Z_wdot", "M_wdot", "M_qdot"), 0.0)
    for i, (x, dx) in enumerate(segs):
        r = geom.radius(x)
        a = -math.pi * rho * r**2
        ah = finned_strip_added_mass(r, geom.b, rho) if i == 1 else a
        out["Y_vdot"] += float(np.sum(a * dx))
        out["N_vdot"] += float(np.sum(a * x * dx))
        out["N_rdot"] += float(np.sum(a * x**2 * dx))
        out["Z_wdot"] += float(np.sum(ah * dx))
        out["M_wdot"] += float(np.sum(-ah * x * dx))
        out["M_qdot"] += float(np.sum(ah * x**2 * dx))
    return out


@dataclass(frozen=True)
class CrossflowAddedMass:
    Y_vdot: float
    N_vdot: float
    N_rdot: float
    Z_wdot: float
    M_wdot: float
    M_qdot: float
    Y_vdot_th: float
    Z_wdot_th: float


def _thruster_crossflow_added_mass(geom: VehicleGeometry, rho: float) -> float:
    """Per-thruster cross-flow added mass over the thruster section [x_2, x_1]."""
    if geom.l_th == 0.0 or geom.d_th == 0.0:
        return 0.0
    return -math.pi * rho * (geom.d_th / 2) ** 2 * (geom.x_1 - geom.x_2)


def crossflow_added_mass(geom: VehicleGeometry, rho: float, n_strips: int = 200,
                         check_convergence: bool = True) -> CrossflowAddedMass:
    """Strip-theory cross-flow added mass of the hull and one horizontal thruster."""
    hull = _hull_added_mass(geom, rho, n_strips)
    if check_convergence:
        fine = _hull_added_mass(geom, rho, 2 * n_strips)
        _check_converged(hull, fine, "hull cross-flow added mass", n_strips, geom.l_h / 2)
    th = _thruster_crossflow_added_mass(geom, rho)
    return CrossflowAddedMass(**hull, Y_vdot_th=th, Z_wdot_th=th)


# first and second moments are compared against force * (l/2) and force * (l/2)^2
_MOMENT_OF = {
    "N_vdot": ("Y_vdot", 1), "N_rdot": ("Y_vdot", 2), "M_wdot": ("Z_wdot", 1), "M_qdot": ("Z_wdot", 2),
    "N_vv": ("Y_vv", 1), "N_rr": ("Y_vv", 3), "M_ww": ("Z_ww", 1), "M_qq": ("Z_ww", 3),
}


def _check_converged(coarse: dict, fine: dict, what: str, n: int, half_length: float) -> None:
    for k, v in coarse.items():
        ref = abs(fine[k])
        if k in _MOMENT_OF:
            base, power = _MOMENT_OF[k]
            ref = max(ref, abs(fine[base]) * half_length**power)
        ref = max(ref, 1e-12)
        if abs(fine[k] - v) > CONVERGENCE_TOL * ref:
            raise IntegrationTooCoarse(
                f"{what}: {k} changes by {abs(fine[k] - v) / ref:.2%} when doubling {n} strips")


# ------------------------------------------------------------------- damping

def ittc57_friction(re: float) -> float:
    """Skin-friction coefficient of the ITTC-57 correlation line (positive)."""
    if re < RE_MIN:
        raise ReynoldsOutOfRange(f"Reynolds number {re:.3g} is below {RE_MIN:g}")
    return 0.075 / (math.log10(re) - 2.0) ** 2


def ellipsoid_axial_drag_coefficient(l: float, d: float, re: float) -> float:
    """Axial drag coefficient of an ellipsoidal body on its frontal area."""
    cf = ittc57_friction(re)
    return 0.44 * (d / l) + 4.0 * cf * (l / d) + 4.0 * cf * math.sqrt(d / l)


def k1_factor(l_over_d: float) -> float:
    """Finite-length correction of the 2D cylinder cross-flow drag."""
    if l_over_d <= 57.5:
        return 0.58 + 0.17 * math.log10(l_over_d) ** 1.6
    return 1.0


def k1_branch_gap() -> float:
    """Jump of the finite-length correction at the branch point l/d = 57.5."""
    return abs((0.58 + 0.17 * math.log10(57.5) ** 1.6) - 1.0)


def crossflow_drag_coefficient(l_over_d: float) -> float:
    return CD_CYLINDER_2D * k1_factor(l_over_d)


@dataclass(frozen=True)
class AxialDamping:
    """X_{u|u|} per part [kg/m] and the combined value."""

    hull: float
    thruster: float
    mast: float
    mount: float
    tunnels: float
    combined: float
    M_uu_mast: float


def axial_damping(geom: VehicleGeometry, rho: float, reference_speed: float = 0.2,
                  viscosity: float = 1.0e-6) -> AxialDamping:
    """Axial quadratic damping; ``thruster`` and ``mount`` are per unit (two of each)."""
    if not reference_speed > 0.0:
        raise ValueError("reference speed must be > 0")
    half_rho = 0.5 * rho

    re_h = reference_speed * geom.l_h / viscosity
    hull = -half_rho * (math.pi * geom.d_h**2 / 4) * ellipsoid_axial_drag_coefficient(geom.l_h, geom.d_h, re_h)

    thruster = 0.0
    if geom.l_th > 0.0 and geom.d_th > 0.0:
        re_t = reference_speed * geom.l_th / viscosity
        thruster = -half_rho * (math.pi * geom.d_th**2 / 4) * ellipsoid_axial_drag_coefficient(
            geom.l_th, geom.d_th, re_t)

    mast = -half_rho * geom.cd_mast_axial * geom.w_m * geom.h_m
    span = max(0.0, geom.b - geom.d_h / 2)
    mount = -half_rho * geom.cd_mount_axial * geom.mount_thickness * span
    tunnels = -half_rho * geom.tunnel_cd_area
    combined = hull + 2.0 * thruster + mast + 2.0 * mount + tunnels
    # mast drag acts above the axis: M = z X with z = -lever
    m_uu = -geom.mast_lever * mast
    return AxialDamping(hull, thruster, mast, mount, tunnels, combined, m_uu)


def _sway_strips(c, x, z) -> dict:
    """Quadratic derivatives of lateral drag strips c [kg/m^2 * m] at (x, z)."""
    c, x, z = (np.asarray(v, float) for v in (c, x, z))
    return {
        "Y_vv": float(np.sum(c)),
        "N_vv": float(np.sum(c * x)),
        "N_rr": float(np.sum(c * np.abs(x) ** 3)),
        "K_vv": float(np.sum(c * -z)),
        "K_pp": float(np.sum(c * np.abs(z) ** 3)),
        "K_rr": float(np.sum(c * x * np.abs(x) * -z)),
    }


def _heave_strips(c, x, y) -> dict:
    c, x, y = (np.asarray(v, float) for v in (c, x, y))
    return {
        "Z_ww": float(np.sum(c)),
        "M_ww": float(np.sum(c * -x)),
        "M_qq": float(np.sum(c * np.abs(x) ** 3)),
        "K_pp": float(np.sum(c * np.abs(y) ** 3)),
    }


def _merge(*parts: dict) -> dict:
    out: dict = {}
    for p in parts:
        for k, v in p.items():
            out[k] = out.get(k, 0.0) + v
    return out


def _hull_crossflow_damping(geom: VehicleGeometry, rho: float, n: int) -> dict:
    cd = crossflow_drag_coefficient(geom.l_h / geom.d_h)
    xs, dxs = zip(*_segments(geom, n))
    x = np.concatenate(xs)
    dx = np.concatenate(dxs)
    c = -0.5 * rho * cd * 2.0 * geom.radius(x) * dx
    zero = np.zeros_like(x)
    sway = _sway_strips(c, x, zero)
    heave = _heave_strips(c, x, zero)
    return {k: v for k, v in _merge(sway, heave).items()
            if k in ("Y_vv", "N_vv", "N_rr", "Z_ww", "M_ww", "M_qq")}


def _thruster_crossflow_damping(geom: VehicleGeometry, rho: float, n: int) -> dict:
    """Both horizontal thruster bodies."""
    if geom.l_th == 0.0 or geom.d_th == 0.0:
        return {}
    cd = crossflow_drag_coefficient(geom.l_th / geom.d_th)
    edges = np.linspace(geom.x_2, geom.x_1, n + 1)
    x = 0.5 * (edges[1:] + edges[:-1])
    c = -0.5 * rho * cd * geom.d_th * np.diff(edges)
    x2 = np.concatenate((x, x))
    c2 = np.concatenate((c, c))
    y2 = np.concatenate((np.full_like(x, geom.y_th), np.full_like(x, -geom.y_th)))
    return _merge(_sway_strips(c2, x2, np.zeros_like(x2)), _heave_strips(c2, x2, y2))


def _mast_crossflow_damping(geom: VehicleGeometry, rho: float, n: int) -> dict:
    if geom.h_m == 0.0 or geom.c_m == 0.0:
        return {}
    z, dz = _mast_z(geom, n)
    c = -0.5 * rho * geom.cd_mast_cross * geom.c_m * dz
    return _sway_strips(c, np.full_like(z, geom.x_mast), z)


def _mount_crossflow_damping(geom: VehicleGeometry, rho: float, n: int) -> dict:
    """Two flat mounts between hull and thruster: broadside in heave, edge-on in sway."""
    r_h = float(geom.radius(0.5 * (geom.x_1 + geom.x_2)))
    span = geom.b - r_h
    if span <= 0.0 or geom.mount_chord == 0.0:
        return {}
    xm = 0.5 * (geom.x_1 + geom.x_2)
    edges = np.linspace(r_h, geom.b, n + 1)
    y = 0.5 * (edges[1:] + edges[:-1])
    dy = np.diff(edges)
    c = -0.5 * rho * geom.cd_mount_cross * geom.mount_chord * dy
    y2 = np.concatenate((y, -y))
    c2 = np.concatenate((c, c))
    heave = _heave_strips(c2, np.full_like(y2, xm), y2)
    c_edge = -0.5 * rho * geom.cd_mount_cross * geom.mount_thickness * span * 2.0
    sway = _sway_strips([c_edge], [xm], [0.0])
    return _merge(heave, sway)


@dataclass(frozen=True)
class CrossflowDamping:
    Y_vv: float
    Z_ww: float
    N_vv: float
    M_ww: float
    M_qq: float
    N_rr: float
    K_vv: float
    K_pp: float
    K_rr: float


def crossflow_damping(geom: VehicleGeometry, rho: float, n_strips: int = 200,
                      check_convergence: bool = True, parts: bool = False):
    """Cross-flow quadratic damping of the whole vehicle.

    With ``parts`` a dict of per-part dictionaries is returned instead.
    """
    hull = _hull_crossflow_damping(geom, rho, n_strips)
    if check_convergence:
        _check_converged(hull, _hull_crossflow_damping(geom, rho, 2 * n_strips),
                         "hull cross-flow damping", n_strips, geom.l_h / 2)
    split = {
        "hull": hull,
        "thrusters": _thruster_crossflow_damping(geom, rho, n_strips),
        "mast": _mast_crossflow_damping(geom, rho, n_strips),
        "mounts": _mount_crossflow_damping(geom, rho, n_strips),
    }
    if parts:
        return split
    total = _merge(*split.values())
    return CrossflowDamping(**{k: total.get(k, 0.0) for k in CrossflowDamping.__dataclass_fields__})


# ---------------------------------------------------------------------- lift

@dataclass(frozen=True)
class BodyLift:
    Y_uv: float
    Z_uw: float
    M_uw: float
    N_uv: float
    x_cp: float
    C_L_alpha: float


def body_lift(geom: VehicleGeometry, rho: float, lift_moment: str = "lever") -> BodyLift:
    """Hull lift derivatives; valid for small incidence (u much larger than v, w)."""
    cl = 0.003 * (180.0 / math.pi) * (geom.l_h / geom.d_h)
    z_uw = -0.5 * rho * geom.d_h**2 * cl
    y_uv = z_uw
    x_cp = geom.x_n - 0.65 * geom.l_h
    n_uv = y_uv * x_cp
    m_uw = -z_uw * x_cp if lift_moment == "lever" else z_uw * x_cp
    return BodyLift(y_uv, z_uw, m_uw, n_uv, x_cp, cl)


# ------------------------------------------------------------------ assembly

def part_contributions(geom: VehicleGeometry, rho: float, options: HydroOptions | None = None) -> dict:
    """Coefficient contributions keyed by part name, in summation order."""
    opt = options or HydroOptions()
    n = opt.n_strips

    hull_am = crossflow_added_mass(geom, rho, n, opt.check_convergence)
    axial = axial_damping(geom, rho, opt.reference_speed, opt.viscosity)
    cross = crossflow_damping(geom, rho, n, opt.check_convergence, parts=True)
    lift = body_lift(geom, rho, opt.lift_moment)

    try:
        x_hull = ellipsoid_axial_added_mass(geom.l_h, geom.d_h, rho)
    except InvalidGeometry as exc:
        raise InvalidGeometry(f"hull: {exc}") from None
    x_th = 0.0
    if geom.l_th > 0.0 and geom.d_th > 0.0:
        try:
            x_th = ellipsoid_axial_added_mass(geom.l_th, geom.d_th, rho)
        except InvalidGeometry as exc:
            raise InvalidGeometry(f"horizontal thruster: {exc}") from None

    hull = {
        "X_udot": x_hull,
        "Y_vdot": hull_am.Y_vdot, "Y_rdot": hull_am.N_vdot, "N_vdot": hull_am.N_vdot,
        "N_rdot": hull_am.N_rdot, "Z_wdot": hull_am.Z_wdot, "M_wdot": hull_am.M_wdot,
        "M_qdot": hull_am.M_qdot,
        "X_uu": axial.hull,
        "Y_uv": lift.Y_uv, "Z_uw": lift.Z_uw, "M_uw": lift.M_uw, "N_uv": lift.N_uv,
    }
    hull.update(cross["hull"])

    thrusters = {
        "X_udot": 2.0 * x_th,
        "Y_vdot": 2.0 * hull_am.Y_vdot_th,
        "Z_wdot": 2.0 * hull_am.Z_wdot_th,
        "X_uu": 2.0 * axial.thruster,
    }
    thrusters = _merge(thrusters, cross["thrusters"])

    mx, mm, my = mast_added_mass(geom, rho)
    kv, kp, npd = mast_roll_added_mass(geom, rho, n)
    mast = _merge({
        "X_udot": mx, "M_udot": mm, "Y_vdot": my,
        "K_vdot": kv, "K_pdot": kp, "N_pdot": npd,
        "X_uu": axial.mast, "M_uu": axial.M_uu_mast,
    }, cross["mast"])

    mounts = _merge({"X_uu": 2.0 * axial.mount}, cross["mounts"])
    tunnels = {"X_uu": axial.tunnels}
    return {"hull": hull, "thrusters": thrusters, "mast": mast, "mounts": mounts, "tunnels": tunnels}


def sum_parts(parts: dict) -> dict[str, float]:
    total = dict.fromkeys(ALL_NAMES, 0.0)
    for contrib in parts.values():
        for k, v in contrib.items():
            total[k] = total[k] + v
    return total


def estimate_all(geom: VehicleGeometry, rho: float = 1025.0,
                 options: HydroOptions | None = None) -> CoefficientSet:
    """Every coefficient from geometry, tagged ``analytic``."""
    return CoefficientSet.from_values(sum_parts(part_contributions(geom, rho, options)), "analytic")
