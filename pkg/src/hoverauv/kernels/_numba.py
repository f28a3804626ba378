"""numba-compiled integration kernel; mirrors ``_numpy`` term by term."""

import math

import numpy as np
from numba import njit

from .layout import (
    BLOWUP, E_JET, E_LAG, E_RHO, E_ROLL, KIND_TUNNEL, T_ASTERN, T_ATH, T_CJET,
    T_D, T_KIND, T_KQ, T_KT, T_KTSCALE, T_ROTDIR, T_TD, T_WT, R_B, R_W, R_XB,
    R_XG, R_YB, R_YG, R_ZB, R_ZG,
)

TWO_PI = 2.0 * math.pi


@njit(cache=True)
def _wrap(a):
    return a - TWO_PI * math.ceil((a - math.pi) / TWO_PI)


@njit(cache=True)
def _rotation(phi, theta, psi, R):
    cphi, sphi = math.cos(phi), math.sin(phi)
    cth, sth = math.cos(theta), math.sin(theta)
    cpsi, spsi = math.cos(psi), math.sin(psi)
    R[0, 0] = cpsi * cth
    R[0, 1] = -spsi * cphi + cpsi * sth * sphi
    R[0, 2] = spsi * sphi + cpsi * cphi * sth
    R[1, 0] = spsi * cth
    R[1, 1] = cpsi * cphi + sphi * sth * spsi
    R[1, 2] = -cpsi * sphi + sth * spsi * cphi
    R[2, 0] = -sth
    R[2, 1] = cth * sphi
    R[2, 2] = cth * cphi


@njit(cache=True)
def _add_coriolis(M, nu, out, sign):
    a0 = 0.0
    a1 = 0.0
    a2 = 0.0
    b0 = 0.0
    b1 = 0.0
    b2 = 0.0
    for j in range(6):
        a0 += M[0, j] * nu[j]
        a1 += M[1, j] * nu[j]
        a2 += M[2, j] * nu[j]
        b0 += M[3, j] * nu[j]
        b1 += M[4, j] * nu[j]
        b2 += M[5, j] * nu[j]
    u, v, w, p, q, r = nu[0], nu[1], nu[2], nu[3], nu[4], nu[5]
    out[0] += sign * (q * a2 - r * a1)
    out[1] += sign * (r * a0 - p * a2)
    out[2] += sign * (p * a1 - q * a0)
    out[3] += sign * (v * a2 - w * a1 + q * b2 - r * b1)
    out[4] += sign * (w * a0 - u * a2 + r * b0 - p * b2)
    out[5] += sign * (u * a1 - v * a0 + p * b1 - q * b0)


@njit(cache=True)
def _thrust(n, u_r, thr, kt_J, kt_val, kt_len, rho, f, qv):
    for i in range(n.shape[0]):
        ni = n[i]
        D = thr[i, T_D]
        kt = thr[i, T_KT] * thr[i, T_KTSCALE]
        tunnel = thr[i, T_KIND] == KIND_TUNNEL
        m = kt_len[i]
        if m > 0 and ni != 0.0 and not tunnel:
            J = u_r * (1.0 - thr[i, T_WT]) / (abs(ni) * D)
            kt = np.interp(J, kt_J[i, :m], kt_val[i, :m]) * thr[i, T_KTSCALE]
        nn = ni * abs(ni)
        T0 = rho * D**4 * kt * nn
        if ni < 0.0:
            T0 *= thr[i, T_ASTERN]
        if tunnel:
            uj2 = abs(T0) / (rho * thr[i, T_ATH])
            if uj2 > 0.0:
                f[i] = T0 * math.exp(-thr[i, T_CJET] * u_r * u_r / uj2)
            else:
                f[i] = 0.0
        else:
            f[i] = T0 * (1.0 - thr[i, T_TD])
        qv[i] = rho * D**5 * thr[i, T_KQ] * nn


@njit(cache=True)
def _derivative(x, ncmd, Minv, MA, MRB, damp, rest, vc, thr, Bm, env, kt_J, kt_val, kt_len, xdot):
    phi, theta, psi = x[3], x[4], x[5]
    R = np.empty((3, 3))
    _rotation(phi, theta, psi, R)
    nu = x[6:12]
    n = x[12:17]
    vcb = np.empty(3)
    for i in range(3):
        vcb[i] = R[0, i] * vc[0] + R[1, i] * vc[1] + R[2, i] * vc[2]
    nr = nu.copy()
    nr[0] -= vcb[0]
    nr[1] -= vcb[1]
    nr[2] -= vcb[2]

    nth = n.shape[0]
    f = np.empty(nth)
    qv = np.empty(nth)
    _thrust(n, nr[0], thr, kt_J, kt_val, kt_len, env[E_RHO], f, qv)
    rhs = np.zeros(6)
    tunnel_on = False
    for j in range(nth):
        for i in range(6):
            rhs[i] += Bm[i, j] * f[j]
        if thr[j, T_KIND] == KIND_TUNNEL and n[j] != 0.0:
            tunnel_on = True
    if env[E_ROLL] != 0.0:
        for j in range(nth):
            rhs[3] += thr[j, T_ROTDIR] * qv[j]
    ur = nr[0]
    if tunnel_on:
        rhs[0] -= env[E_JET] * ur * abs(ur)

    u, v, w, p, q, r = nr[0], nr[1], nr[2], nr[3], nr[4], nr[5]
    uu, vv, ww = u * abs(u), v * abs(v), w * abs(w)
    rhs[0] += damp[0] * uu
    rhs[1] += damp[1] * vv + damp[11] * u * v
    rhs[2] += damp[2] * ww + damp[12] * u * w
    rhs[3] += damp[3] * p * abs(p) + damp[4] * vv + damp[5] * r * abs(r)
    rhs[4] += damp[6] * ww + damp[7] * q * abs(q) + damp[8] * uu + damp[13] * u * w
    rhs[5] += damp[9] * vv + damp[10] * r * abs(r) + damp[14] * u * v

    W = rest[R_W]
    B = rest[R_B]
    fx = (W - B) * R[2, 0]
    fy = (W - B) * R[2, 1]
    fz = (W - B) * R[2, 2]
    gx, gy, gz = W * R[2, 0], W * R[2, 1], W * R[2, 2]
    bx, by, bz = -B * R[2, 0], -B * R[2, 1], -B * R[2, 2]
    xg, yg, zg = rest[R_XG], rest[R_YG], rest[R_ZG]
    xb, yb, zb = rest[R_XB], rest[R_YB], rest[R_ZB]
    rhs[0] += fx
    rhs[1] += fy
    rhs[2] += fz
    rhs[3] += (yg * gz - zg * gy) + (yb * bz - zb * by)
    rhs[4] += (zg * gx - xg * gz) + (zb * bx - xb * bz)
    rhs[5] += (xg * gy - yg * gx) + (xb * by - yb * bx)

    _add_coriolis(MRB, nu, rhs, -1.0)
    _add_coriolis(MA, nr, rhs, -1.0)

    # d/dt of the body-frame current is -omega x vcb
    pp, qq, rr = nu[3], nu[4], nu[5]
    a0 = -(qq * vcb[2] - rr * vcb[1])
    a1 = -(rr * vcb[0] - pp * vcb[2])
    a2 = -(pp * vcb[1] - qq * vcb[0])
    for i in range(6):
        rhs[i] += MA[i, 0] * a0 + MA[i, 1] * a1 + MA[i, 2] * a2

    for i in range(3):
        xdot[i] = R[i, 0] * nu[0] + R[i, 1] * nu[1] + R[i, 2] * nu[2]
    cphi, sphi = math.cos(phi), math.sin(phi)
    cth, tth = math.cos(theta), math.tan(theta)
    xdot[3] = pp + sphi * tth * qq + cphi * tth * rr
    xdot[4] = cphi * qq - sphi * rr
    xdot[5] = (sphi * qq + cphi * rr) / cth
    for i in range(6):
        acc = 0.0
        for j in range(6):
            acc += Minv[i, j] * rhs[j]
        xdot[6 + i] = acc
    lag = env[E_LAG]
    for j in range(nth):
        xdot[12 + j] = (ncmd[j] - n[j]) / lag if lag > 0.0 else 0.0


@njit(cache=True)
def derivative(x, ncmd, Minv, MA, MRB, damp, rest, vc, thr, Bm, env, kt_J, kt_val, kt_len):
    xdot = np.empty(x.shape[0])
    _derivative(x, ncmd, Minv, MA, MRB, damp, rest, vc, thr, Bm, env, kt_J, kt_val, kt_len, xdot)
    return xdot


@njit(cache=True)
def rk4_advance(x0, ncmd, nsteps, dt, Minv, MA, MRB, damp, rest, vc, thr, Bm, env, kt_J, kt_val, kt_len):
    nx = x0.shape[0]
    x = x0.copy()
    if env[E_LAG] <= 0.0:
        for j in range(ncmd.shape[0]):
            x[12 + j] = ncmd[j]
    k1 = np.empty(nx)
    k2 = np.empty(nx)
    k3 = np.empty(nx)
    k4 = np.empty(nx)
    xt = np.empty(nx)
    h2 = 0.5 * dt
    for _ in range(nsteps):
        _derivative(x, ncmd, Minv, MA, MRB, damp, rest, vc, thr, Bm, env, kt_J, kt_val, kt_len, k1)
        for i in range(nx):
            xt[i] = x[i] + h2 * k1[i]
        _derivative(xt, ncmd, Minv, MA, MRB, damp, rest, vc, thr, Bm, env, kt_J, kt_val, kt_len, k2)
        for i in range(nx):
            xt[i] = x[i] + h2 * k2[i]
        _derivative(xt, ncmd, Minv, MA, MRB, damp, rest, vc, thr, Bm, env, kt_J, kt_val, kt_len, k3)
        for i in range(nx):
            xt[i] = x[i] + dt * k3[i]
        _derivative(xt, ncmd, Minv, MA, MRB, damp, rest, vc, thr, Bm, env, kt_J, kt_val, kt_len, k4)
        ok = True
        for i in range(nx):
            x[i] = x[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            if not math.isfinite(x[i]) or abs(x[i]) > BLOWUP:
                ok = False
        for i in range(3, 6):
            x[i] = _wrap(x[i])
        if not ok:
            return x, False
    return x, True
