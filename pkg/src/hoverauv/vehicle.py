"""Rigid-body state types and the terms of the 6-DOF equations of motion.

Frames: Earth-fixed NED and a body frame at the centre of buoyancy with x
forward, y to starboard and z down. The model is

    eta_dot = J(eta) nu
    M nu_dot + C(nu) nu - F_damp(nu_r) - F_rest(eta) = tau

where ``damping_force`` and ``restoring_force`` return the forces acting on
the vehicle (the negatives of D(nu_r) nu_r and g(eta)).
"""

from dataclasses import dataclass, field

import numpy as np

from .coefficients import ADDED_MASS_NAMES, CoefficientSet
from .environment import Environment
from .errors import PitchSingularity, SingularInertia

TWO_PI = 2.0 * np.pi
PITCH_GUARD = 1e-6
MAX_CONDITION = 1e12


def wrap_angle(a):
    """Wrap angle(s) to (-pi, pi]."""
    return a - TWO_PI * np.ceil((np.asarray(a, float) - np.pi) / TWO_PI)


def _finite(name, values):
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{name} has non-finite components: {values}")


@dataclass(frozen=True)
class Pose:
    """NED position [m] and ZYX Euler angles [rad], angles wrapped to (-pi, pi]."""

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0
    phi: float = 0.0
    theta: float = 0.0
    psi: float = 0.0

    def __post_init__(self):
        vals = [float(getattr(self, f)) for f in ("x", "y", "z", "phi", "theta", "psi")]
        _finite("Pose", vals)
        for name, v in zip(("x", "y", "z"), vals[:3]):
            object.__setattr__(self, name, v)
        for name, v in zip(("phi", "theta", "psi"), vals[3:]):
            object.__setattr__(self, name, float(wrap_angle(v)))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z, self.phi, self.theta, self.psi])

    @classmethod
    def from_array(cls, a) -> "Pose":
        return cls(*np.asarray(a, float)[:6])


@dataclass(frozen=True)
class BodyVelocity:
    """Body-frame linear [m/s] and angular [rad/s] velocity."""

    u: float = 0.0
    v: float = 0.0
    w: float = 0.0
    p: float = 0.0
    q: float = 0.0
    r: float = 0.0

    def __post_init__(self):
        vals = [float(getattr(self, f)) for f in ("u", "v", "w", "p", "q", "r")]
        _finite("BodyVelocity", vals)
        for name, v in zip(("u", "v", "w", "p", "q", "r"), vals):
            object.__setattr__(self, name, v)

    def as_array(self) -> np.ndarray:
        return np.array([self.u, self.v, self.w, self.p, self.q, self.r])

    @classmethod
    def from_array(cls, a) -> "BodyVelocity":
        return cls(*np.asarray(a, float)[:6])


@dataclass(frozen=True)
class GeneralizedForce:
    """Body-frame forces [N] and moments [N m]."""

    X: float = 0.0
    Y: float = 0.0
    Z: float = 0.0
    K: float = 0.0
    M: float = 0.0
    N: float = 0.0

    def __post_init__(self):
        vals = [float(getattr(self, f)) for f in ("X", "Y", "Z", "K", "M", "N")]
        _finite("GeneralizedForce", vals)
        for name, v in zip(("X", "Y", "Z", "K", "M", "N"), vals):
            object.__setattr__(self, name, v)

    def as_array(self) -> np.ndarray:
        return np.array([self.X, self.Y, self.Z, self.K, self.M, self.N])

    @classmethod
    def from_array(cls, a) -> "GeneralizedForce":
        return cls(*np.asarray(a, float)[:6])


@dataclass(frozen=True)
class MassProperties:
    """Mass, inertia about the body origin, CG/CB offsets and displacement."""

    mass: float
    inertia: np.ndarray
    r_g: np.ndarray = field(default_factory=lambda: np.zeros(3))
    r_b: np.ndarray = field(default_factory=lambda: np.zeros(3))
    volume: float = 0.0
    rho: float = 1025.0
    gravity: float = 9.81

    def __post_init__(self):
        inertia = np.array(self.inertia, dtype=float)
        if inertia.shape == (3,):
            inertia = np.diag(inertia)
        object.__setattr__(self, "inertia", inertia)
        object.__setattr__(self, "r_g", np.array(self.r_g, dtype=float).reshape(3))
        object.__setattr__(self, "r_b", np.array(self.r_b, dtype=float).reshape(3))
        if not self.mass > 0.0:
            raise ValueError("mass must be > 0")
        if not self.volume > 0.0:
            raise ValueError("displaced volume must be > 0")
        if inertia.shape != (3, 3) or not np.allclose(inertia, inertia.T, atol=1e-12):
            raise ValueError("inertia tensor must be a symmetric 3x3 matrix")
        if np.min(np.linalg.eigvalsh(inertia)) <= 0.0:
            raise ValueError("inertia tensor must be positive definite")

    @property
    def weight(self) -> float:
        return self.mass * self.gravity

    @property
    def buoyancy(self) -> float:
        return self.rho * self.gravity * self.volume


def skew(a) -> np.ndarray:
    """Matrix S(a) with S(a) b = a x b."""
    return np.array([[0.0, -a[2], a[1]], [a[2], 0.0, -a[0]], [-a[1], a[0], 0.0]])


def rotation_matrix(phi: float, theta: float, psi: float) -> np.ndarray:
    """Body-to-NED rotation R = Rz(psi) Ry(theta) Rx(phi)."""
    cphi, sphi = np.cos(phi), np.sin(phi)
    cth, sth = np.cos(theta), np.sin(theta)
    cpsi, spsi = np.cos(psi), np.sin(psi)
    return np.array([
        [cpsi * cth, -spsi * cphi + cpsi * sth * sphi, spsi * sphi + cpsi * cphi * sth],
        [spsi * cth, cpsi * cphi + sphi * sth * spsi, -cpsi * sphi + sth * spsi * cphi],
        [-sth, cth * sphi, cth * cphi],
    ])


def euler_rate_matrix(phi: float, theta: float) -> np.ndarray:
    """Map from body rates (p, q, r) to Euler angle rates."""
    if abs(theta) >= np.pi / 2 - PITCH_GUARD:
        raise PitchSingularity(f"pitch {theta:.9f} rad is not below pi/2 - {PITCH_GUARD}")
    cphi, sphi = np.cos(phi), np.sin(phi)
    cth, tth = np.cos(theta), np.tan(theta)
    return np.array([
        [1.0, sphi * tth, cphi * tth],
        [0.0, cphi, -sphi],
        [0.0, sphi / cth, cphi / cth],
    ])


def velocity_transform(pose: Pose, nu: BodyVelocity) -> np.ndarray:
    """Earth-frame rates eta_dot = J(eta) nu."""
    T = euler_rate_matrix(pose.phi, pose.theta)
    R = rotation_matrix(pose.phi, pose.theta, pose.psi)
    n = nu.as_array()
    return np.concatenate((R @ n[:3], T @ n[3:]))


def rigid_body_inertia(massprops: MassProperties) -> np.ndarray:
    m = massprops.mass
    S = skew(massprops.r_g)
    M = np.zeros((6, 6))
    M[:3, :3] = m * np.eye(3)
    M[:3, 3:] = -m * S
    M[3:, :3] = m * S
    M[3:, 3:] = massprops.inertia
    return M


# (row, col, name): M_A[row, col] = -coefficient, mirrored to (col, row)
_ADDED_MASS_LAYOUT = (
    (0, 0, "X_udot"), (1, 1, "Y_vdot"), (2, 2, "Z_wdot"),
    (3, 3, "K_pdot"), (4, 4, "M_qdot"), (5, 5, "N_rdot"),
    (1, 5, "Y_rdot"), (5, 1, "N_vdot"), (3, 1, "K_vdot"),
    (5, 3, "N_pdot"), (4, 0, "M_udot"), (4, 2, "M_wdot"),
)


def added_mass_matrix(coeffs: CoefficientSet) -> np.ndarray:
    """Symmetric added-mass matrix M_A from the listed derivatives.

    Each listed off-diagonal value also fills its transposed slot; where both
    slots are listed (Y_rdot and N_vdot) the two are averaged.
    """
    coeffs.require(ADDED_MASS_NAMES)
    A = np.zeros((6, 6))
    filled = np.zeros((6, 6), dtype=bool)
    for i, j, name in _ADDED_MASS_LAYOUT:
        A[i, j] = -coeffs[name]
        filled[i, j] = True
    for i, j, _ in _ADDED_MASS_LAYOUT:
        if not filled[j, i]:
            A[j, i] = A[i, j]
    return 0.5 * (A + A.T)


def assemble_inertia(coeffs: CoefficientSet, massprops: MassProperties) -> np.ndarray:
    """System inertia M = M_RB + M_A."""
    return rigid_body_inertia(massprops) + added_mass_matrix(coeffs)


def coriolis(M: np.ndarray, nu) -> np.ndarray:
    """Skew-symmetric C(nu) built from the blocks of a symmetric M."""
    n = np.asarray(nu.as_array() if isinstance(nu, BodyVelocity) else nu, float)
    a = M[:3, :3] @ n[:3] + M[:3, 3:] @ n[3:]
    b = M[3:, :3] @ n[:3] + M[3:, 3:] @ n[3:]
    C = np.zeros((6, 6))
    C[:3, 3:] = -skew(a)
    C[3:, :3] = -skew(a)
    C[3:, 3:] = -skew(b)
    return C


def damping_force(coeffs: CoefficientSet, nu_r) -> GeneralizedForce:
    """Quadratic damping plus body lift at water-relative velocity ``nu_r``.

    Missing coefficients count as zero.
    """
    u, v, w, p, q, r = np.asarray(nu_r.as_array() if isinstance(nu_r, BodyVelocity) else nu_r, float)
    c = coeffs.get
    return GeneralizedForce(
        X=c("X_uu") * u * abs(u),
        Y=c("Y_vv") * v * abs(v) + c("Y_uv") * u * v,
        Z=c("Z_ww") * w * abs(w) + c("Z_uw") * u * w,
        K=c("K_pp") * p * abs(p) + c("K_vv") * v * abs(v) + c("K_rr") * r * abs(r),
        M=c("M_ww") * w * abs(w) + c("M_qq") * q * abs(q) + c("M_uu") * u * abs(u) + c("M_uw") * u * w,
        N=c("N_vv") * v * abs(v) + c("N_rr") * r * abs(r) + c("N_uv") * u * v,
    )


def restoring_force(pose: Pose, massprops: MassProperties) -> GeneralizedForce:
    """Weight and buoyancy resolved in the body frame, with their moments."""
    R = rotation_matrix(pose.phi, pose.theta, pose.psi)
    down = R.T @ np.array([0.0, 0.0, 1.0])
    fg = massprops.weight * down
    fb = -massprops.buoyancy * down
    moment = np.cross(massprops.r_g, fg) + np.cross(massprops.r_b, fb)
    return GeneralizedForce(*(fg + fb), *moment)


@dataclass(frozen=True)
class VehicleModel:
    """Coefficient set and mass properties with the derived system matrices."""

    coeffs: CoefficientSet
    massprops: MassProperties

    def __post_init__(self):
        MRB = rigid_body_inertia(self.massprops)
        MA = added_mass_matrix(self.coeffs)
        M = MRB + MA
        cond = np.linalg.cond(M)
        if not np.isfinite(cond) or cond > MAX_CONDITION:
            raise SingularInertia(f"system inertia condition number {cond:.3g} exceeds {MAX_CONDITION:g}")
        object.__setattr__(self, "M_RB", MRB)
        object.__setattr__(self, "M_A", MA)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "M_inv", np.linalg.inv(M))

    def kinetic_energy(self, nu) -> float:
        n = np.asarray(nu, float)
        return 0.5 * float(n @ self.M @ n)


def dynamics_rhs(model: VehicleModel, pose: Pose, nu: BodyVelocity, tau: GeneralizedForce,
                 env: Environment | None = None) -> np.ndarray:
    """Body acceleration nu_dot for a given external force ``tau``.

    The current enters through the relative velocity nu_r used by damping
    and added-mass Coriolis terms; rigid-body terms use nu.
    """
    env = env or Environment()
    n = nu.as_array()
    R = rotation_matrix(pose.phi, pose.theta, pose.psi)
    vcb = R.T @ env.current_vector
    nr = n.copy()
    nr[:3] -= vcb
    rhs = (tau.as_array()
           + damping_force(model.coeffs, nr).as_array()
           + restoring_force(pose, model.massprops).as_array()
           - coriolis(model.M_RB, n) @ n
           - coriolis(model.M_A, nr) @ nr
           + model.M_A[:, :3] @ (-np.cross(n[3:], vcb)))
    return np.linalg.solve(model.M, rhs)
