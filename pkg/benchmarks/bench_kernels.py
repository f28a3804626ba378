"""Compare the numba and numpy integration kernels.

Usage: python3 benchmarks/bench_kernels.py [--steps N] [--repeat R]
"""

import argparse
import time

import numpy as np

from hoverauv.environment import Environment
from hoverauv.kernels import get_kernel, numba_available
from hoverauv.simulator import build_vehicle, initial_state


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    vehicle = build_vehicle(env=Environment(current=(0.05, 0.1, 0.0)))
    x0 = initial_state(eta=[0, 0, 8, 0.05, -0.02, 0.3], nu=[0.2, 0.05, 0.0, 0.01, 0.0, 0.02]).x
    ncmd = np.array([20.0, 18.0, 5.0, 10.0, -10.0])
    dt = 0.01

    backends = ["numpy"] + (["numba"] if numba_available() else [])
    results = {}
    for name in backends:
        k = get_kernel(name)
        k.rk4_advance(x0, ncmd, 1, dt, vehicle.params)  # compile / warm up
        t = best_of(lambda: k.rk4_advance(x0, ncmd, args.steps, dt, vehicle.params), args.repeat)
        x, _ = k.rk4_advance(x0, ncmd, args.steps, dt, vehicle.params)
        results[name] = (t, x)
        print(f"{name:>6}: {args.steps} RK4 steps in {t * 1e3:9.2f} ms  ({t / args.steps * 1e6:8.2f} us/step)")
    if len(results) == 2:
        (tn, xn), (tb, xb) = results["numpy"], results["numba"]
        print(f"speed-up {tn / tb:.1f}x, max state difference {np.max(np.abs(xn - xb)):.3g}")
    else:
        print("numba unavailable or disabled; numpy kernel only")


if __name__ == "__main__":
    main()
