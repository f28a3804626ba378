"""Vectorised numpy implementation of the integration kernel.

This is the fallback used when numba is unavailable or disabled, and the
reference the compiled kernel is tested against.
"""

import numpy as np

from .layout import (
    BLOWUP, E_JET, E_LAG, E_RHO, E_ROLL, KIND_TUNNEL, T_ASTERN, T_ATH, T_CJET,
    T_D, T_KIND, T_KQ, T_KT, T_KTSCALE, T_ROTDIR, T_TD, T_WT, R_B, R_W, R_XB,
    R_XG, R_YB, R_YG, R_ZB, R_ZG,
)

TWO_PI = 2.0 * np.pi


def wrap_angle(a):
    """Wrap to (-pi, pi]."""
    return a - TWO_PI * np.ceil((a - np.pi) / TWO_PI)


def rotation(phi, theta, psi):
    """Body-to-NED rotation for ZYX Euler angles."""
    cphi, sphi = np.cos(phi), np.sin(phi)
    cth, sth = np.cos(theta), np.sin(theta)
    cpsi, spsi = np.cos(psi), np.sin(psi)
    return np.array([
        [cpsi * cth, -spsi * cphi + cpsi * sth * sphi, spsi * sphi + cpsi * cphi * sth],
        [spsi * cth, cpsi * cphi + sphi * sth * spsi, -cpsi * sphi + sth * spsi * cphi],
        [-sth, cth * sphi, cth * cphi],
    ])


def euler_rate_matrix(phi, theta):
    cphi, sphi = np.cos(phi), np.sin(phi)
    cth, tth = np.cos(theta), np.tan(theta)
    return np.array([
        [1.0, sphi * tth, cphi * tth],
        [0.0, cphi, -sphi],
        [0.0, sphi / cth, cphi / cth],
    ])


def cross(a, b):
    # np.cross carries heavy per-call overhead for 3-vectors
    return np.array([a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]])


def coriolis_product(M, nu):
    """C(nu) @ nu for the skew parameterisation of a symmetric 6x6 M."""
    a = M[:3, :3] @ nu[:3] + M[:3, 3:] @ nu[3:]
    b = M[3:, :3] @ nu[:3] + M[3:, 3:] @ nu[3:]
    return np.concatenate((cross(nu[3:], a), cross(nu[:3], a) + cross(nu[3:], b)))


def damping(d, nr):
    u, v, w, p, q, r = nr
    uu, vv, ww = u * abs(u), v * abs(v), w * abs(w)
    return np.array([
        d[0] * uu,
        d[1] * vv + d[11] * u * v,
        d[2] * ww + d[12] * u * w,
        d[3] * p * abs(p) + d[4] * vv + d[5] * r * abs(r),
        d[6] * ww + d[7] * q * abs(q) + d[8] * uu + d[13] * u * w,
        d[9] * vv + d[10] * r * abs(r) + d[14] * u * v,
    ])


def restoring(rest, R):
    fg = R[2, :] * rest[R_W]
    fb = -R[2, :] * rest[R_B]
    rg = np.array([rest[R_XG], rest[R_YG], rest[R_ZG]])
    rb = np.array([rest[R_XB], rest[R_YB], rest[R_ZB]])
    return np.concatenate((fg + fb, cross(rg, fg) + cross(rb, fb)))


def thruster_forces(n, u_r, thr, kt_J, kt_val, kt_len, rho):
    """Delivered thrust and shaft torque for every thruster at speeds ``n``."""
    D = thr[:, T_D]
    kt = thr[:, T_KT] * thr[:, T_KTSCALE]
    for i in range(n.shape[0]):
        m = kt_len[i]
        if m > 0 and n[i] != 0.0 and thr[i, T_KIND] != KIND_TUNNEL:
            J = u_r * (1.0 - thr[i, T_WT]) / (abs(n[i]) * D[i])
            kt[i] = np.interp(J, kt_J[i, :m], kt_val[i, :m]) * thr[i, T_KTSCALE]
    nn = n * np.abs(n)
    T0 = rho * D**4 * kt * nn
    T0 = np.where(n < 0.0, T0 * thr[:, T_ASTERN], T0)
    tunnel = thr[:, T_KIND] == KIND_TUNNEL
    uj2 = np.abs(T0) / (rho * np.where(tunnel, thr[:, T_ATH], 1.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        jet = np.where(uj2 > 0.0, np.exp(-thr[:, T_CJET] * u_r * u_r / uj2), 0.0)
    f = np.where(tunnel, T0 * jet, T0 * (1.0 - thr[:, T_TD]))
    q = rho * D**5 * thr[:, T_KQ] * nn
    return f, q


def propulsion_tau(n, u_r, P):
    f, q = thruster_forces(n, u_r, P.thr, P.kt_J, P.kt_val, P.kt_len, P.env[E_RHO])
    tau = P.Bm @ f
    if P.env[E_ROLL] != 0.0:
        tau[3] += np.dot(P.thr[:, T_ROTDIR], q)
    if np.any((P.thr[:, T_KIND] == KIND_TUNNEL) & (n != 0.0)):
        tau[0] -= P.env[E_JET] * u_r * abs(u_r)
    return tau, f


def derivative(x, ncmd, P):
    """Time derivative of the packed state ``[eta, nu, n]``."""
    phi, theta, psi = x[3], x[4], x[5]
    nu = x[6:12]
    n = x[12:17]
    R = rotation(phi, theta, psi)
    vcb = R.T @ P.vc
    nu_r = nu.copy()
    nu_r[:3] -= vcb
    tau, _ = propulsion_tau(n, nu_r[0], P)
    rhs = (tau + damping(P.damp, nu_r) + restoring(P.rest, R)
           - coriolis_product(P.MRB, nu) - coriolis_product(P.MA, nu_r)
           + P.MA[:, :3] @ (-cross(nu[3:], vcb)))
    xdot = np.empty(17)
    xdot[0:3] = R @ nu[:3]
    xdot[3:6] = euler_rate_matrix(phi, theta) @ nu[3:]
    xdot[6:12] = P.Minv @ rhs
    lag = P.env[E_LAG]
    xdot[12:17] = (ncmd - n) / lag if lag > 0.0 else 0.0
    return xdot


def rk4_advance(x, ncmd, nsteps, dt, P):
    """Advance ``nsteps`` RK4 steps under constant commands; returns (x, ok)."""
    x = np.array(x, dtype=float)
    if P.env[E_LAG] <= 0.0:
        x[12:17] = ncmd
    for _ in range(nsteps):
        k1 = derivative(x, ncmd, P)
        k2 = derivative(x + 0.5 * dt * k1, ncmd, P)
        k3 = derivative(x + 0.5 * dt * k2, ncmd, P)
        k4 = derivative(x + dt * k3, ncmd, P)
        x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        x[3:6] = wrap_angle(x[3:6])
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > BLOWUP:
            return x, False
    return x, True
