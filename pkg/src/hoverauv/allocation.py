"""Redistributed pseudo-inverse thrust allocation.

Allocation works on the controllable rows (X, Y, Z, N) of the thruster
configuration matrix. Each pass solves

    f = -c + W^-1 B^T (B W^-1 B^T + eps I)^-1 (tau + B0 c)

where ``B`` is ``B0`` with the columns of saturated thrusters zeroed and
``c`` holds the negated saturated thrusts. The regularised solve is
followed by iterative refinement so ``eps`` does not bias feasible
solutions.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch
from .propulsion import thrust_limits

CONTROLLABLE_ROWS = (0, 1, 2, 5)
HORIZONTAL = (0, 1)
LATERAL = (3, 4)


@dataclass(frozen=True)
class AllocationProblem:
    """Demand on rows (X, Y, Z, N) and the thruster envelope."""

    tau_c: np.ndarray
    B0: np.ndarray
    W: np.ndarray
    f_min: np.ndarray
    f_max: np.ndarray
    epsilon: float = 1e-6

    def __post_init__(self):
        B0 = np.atleast_2d(np.asarray(self.B0, float))
        m, k = B0.shape
        tau = np.asarray(self.tau_c, float).ravel()
        W = np.asarray(self.W, float)
        W = np.diag(W).copy() if W.ndim == 2 else W.ravel()
        f_min = np.asarray(self.f_min, float).ravel()
        f_max = np.asarray(self.f_max, float).ravel()
        if tau.shape[0] != m:
            raise DimensionMismatch(f"demand has {tau.shape[0]} rows, B0 has {m}")
        for name, a in (("W", W), ("f_min", f_min), ("f_max", f_max)):
            if a.shape[0] != k:
                raise DimensionMismatch(f"{name} has {a.shape[0]} entries for {k} thrusters")
        if np.any(W <= 0.0):
            raise ValueError("weights must be positive")
        if np.any(f_min >= f_max):
            raise ValueError("f_min must be below f_max for every thruster")
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be positive")
        if not (np.all(np.isfinite(tau)) and np.all(np.isfinite(B0))):
            raise ValueError("demand and configuration matrix must be finite")
        for name, a in (("tau_c", tau), ("B0", B0), ("W", W), ("f_min", f_min), ("f_max", f_max)):
            a.setflags(write=False)
            object.__setattr__(self, name, a)


@dataclass(frozen=True)
class AllocationResult:
    f_th: np.ndarray
    saturated: np.ndarray
    residual: float
    iterations: int
    infeasible: bool = False
    trace: tuple = field(default=(), repr=False)

    def achieved(self, B0) -> np.ndarray:
        return np.asarray(B0) @ self.f_th


def _solve(B0, winv, free, c, tau, eps, refine: int = 2):
    B = B0 * free
    BW = B * winv
    G = BW @ B.T
    Ge = G + eps * np.eye(B0.shape[0])
    rhs = tau + B0 @ c
    y = np.linalg.solve(Ge, rhs)
    # refinement removes the eps bias on the range of B; directions outside it stay untouched
    for _ in range(refine):
        y += np.linalg.solve(Ge, rhs - G @ y)
    return -c + BW.T @ y, B


def allocate(problem: AllocationProblem, trace: bool = False, tol: float = 1e-6) -> AllocationResult:
    """Allocate ``problem.tau_c`` over the thrusters.

    Violating thrusters are clamped together each pass. A clamped thruster
    is released again when the demand residual pulls it back inside its
    box, which keeps the fixed point a constrained least-squares optimum.
    """
    B0, tau, eps = problem.B0, problem.tau_c, problem.epsilon
    lo, hi = problem.f_min, problem.f_max
    k = B0.shape[1]
    winv = 1.0 / problem.W
    free = np.ones(k, dtype=bool)
    c = np.zeros(k)
    steps = []
    iterations = 0
    scale = 1.0 + float(np.linalg.norm(tau))
    while True:
        f, B = _solve(B0, winv, free, c, tau, eps)
        if trace:
            steps.append({"B": B.copy(), "c": c.copy(), "f": f.copy()})
        over = free & (f > hi)
        under = free & (f < lo)
        g = B0.T @ (B0 @ f - tau)
        gtol = 1e-9 * scale * (1.0 + np.abs(B0).sum(axis=0))
        at_hi = ~free & (f >= hi)
        release = ~free & ((at_hi & (g > gtol)) | (~at_hi & (g < -gtol)))
        if not (over.any() or under.any() or release.any()) or iterations == k:
            break
        iterations += 1
        c[over] = -hi[over]
        c[under] = -lo[under]
        free &= ~(over | under)
        free[release] = True
        c[release] = 0.0
    f = np.clip(f, lo, hi)
    residual = float(np.linalg.norm(B0 @ f - tau))
    saturated = (f <= lo) | (f >= hi)
    infeasible = residual > tol * scale
    return AllocationResult(f, saturated, residual, iterations, infeasible, tuple(steps))


@dataclass(frozen=True)
class WeightSchedule:
    """Speed-scheduled thruster weights; a lower weight marks a preferred thruster.

    Below ``u_lo`` the lateral thrusters are preferred, above ``u_hi`` the
    horizontal pair. Between them the weights follow a cosine ramp.
    """

    u_lo: float = 0.2
    u_hi: float = 0.5
    w_preferred: float = 1.0
    w_avoided: float = 10.0
    w_vertical: float = 1.0

    def __post_init__(self):
        if not self.u_hi > self.u_lo:
            raise ValueError("u_hi must exceed u_lo")
        if min(self.w_preferred, self.w_avoided, self.w_vertical) <= 0.0:
            raise ValueError("weights must be positive")


def ramp(u: float, u_lo: float, u_hi: float) -> float:
    """0 below u_lo, 1 above u_hi, cosine in between."""
    s = min(max((u - u_lo) / (u_hi - u_lo), 0.0), 1.0)
    return 0.5 * (1.0 - math.cos(math.pi * s))


def weight_schedule(u: float, params: WeightSchedule | None = None) -> np.ndarray:
    """Diagonal of W at surge speed ``u``."""
    p = params or WeightSchedule()
    s = ramp(u, p.u_lo, p.u_hi)
    w_h = p.w_avoided + s * (p.w_preferred - p.w_avoided)
    w_l = p.w_preferred + s * (p.w_avoided - p.w_preferred)
    W = np.full(5, p.w_vertical)
    W[list(HORIZONTAL)] = w_h
    W[list(LATERAL)] = w_l
    return W


def controllable_matrix(B: np.ndarray) -> np.ndarray:
    """Rows X, Y, Z, N of a 6-row configuration matrix."""
    B = np.asarray(B, float)
    if B.shape[0] != 6:
        raise DimensionMismatch(f"expected 6 rows, got {B.shape[0]}")
    return B[list(CONTROLLABLE_ROWS)]


def vehicle_problem(tau_c, B, specs, u: float = 0.0, schedule: WeightSchedule | None = None,
                    epsilon: float = 1e-6, rho: float = 1025.0, disabled=()) -> AllocationProblem:
    """Allocation problem at surge speed ``u`` with the thrusters' speed-dependent limits.

    ``disabled`` lists zero-based thruster indices whose columns are removed
    (faulted or deliberately unused thrusters); their limits collapse to a
    tiny band around zero.
    """
    B0 = controllable_matrix(B).copy()
    lim = np.array([thrust_limits(s, u, rho) for s in specs])
    f_min, f_max = lim[:, 0].copy(), lim[:, 1].copy()
    for j in disabled:
        B0[:, j] = 0.0
        f_min[j], f_max[j] = -1e-12, 1e-12
    tau = np.asarray(tau_c, float).ravel()
    if tau.shape[0] == 6:
        tau = tau[list(CONTROLLABLE_ROWS)]
    return AllocationProblem(tau, B0, weight_schedule(u, schedule), f_min, f_max, epsilon)
