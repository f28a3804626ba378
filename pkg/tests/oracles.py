"""Independent reference implementations used only by the tests."""

import itertools

import numpy as np


def constrained_lsq_oracle(B0, tau, f_min, f_max):
    """Box-constrained least squares by enumerating every active set.

    Each thruster is free, at its lower bound or at its upper bound. The
    minimum-residual feasible candidate wins; its achieved demand is unique
    even when the thrust vector is not.
    """
    B0 = np.asarray(B0, float)
    k = B0.shape[1]
    best, best_res = None, np.inf
    for free in itertools.product((False, True), repeat=k):
        free = np.array(free)
        fixed = np.flatnonzero(~free)
        choice = np.array(list(itertools.product((False, True), repeat=fixed.size)), dtype=bool)
        F = np.zeros((choice.shape[0], k))
        F[:, fixed] = np.where(choice, f_max[fixed], f_min[fixed])
        if free.any():
            rhs = tau[None, :] - F[:, fixed] @ B0[:, fixed].T
            F[:, free] = rhs @ np.linalg.pinv(B0[:, free]).T
            ok = np.all((F >= f_min - 1e-9) & (F <= f_max + 1e-9), axis=1)
            F = F[ok]
        if F.shape[0] == 0:
            continue
        res = np.linalg.norm(F @ B0.T - tau, axis=1)
        i = int(np.argmin(res))
        if res[i] < best_res - 1e-12:
            best, best_res = F[i], res[i]
    return best, best_res


def min_norm_lsq(B0, tau, W=None):
    """Weighted minimum-norm solution of B0 f = tau from the normal equations."""
    B0 = np.asarray(B0, float)
    Winv = np.eye(B0.shape[1]) if W is None else np.diag(1.0 / np.asarray(W, float))
    return Winv @ B0.T @ np.linalg.solve(B0 @ Winv @ B0.T, tau)


def los_heading_oracle(pos, start, end, delta):
    """Look-ahead heading from an explicit projection onto the segment."""
    p, a, b = (np.asarray(v, float)[:2] for v in (pos, start, end))
    t = b - a
    L = np.hypot(*t)
    s = np.dot(p - a, t) / L
    target = a + t * min(s + delta, L) / L
    d = target - p
    return np.arctan2(d[1], d[0])


def lambert_free_tunnel_inverse(T, k, lo=0.0, hi=1e4):
    """Invert T = T0 exp(-k/T0) for T0 > 0 by bisection."""
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid * np.exp(-k / mid) < T:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
