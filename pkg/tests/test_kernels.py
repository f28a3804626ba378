import os
import subprocess
import sys

import numpy as np
import pytest

from hoverauv.kernels import BACKEND, get_kernel, numba_available

needs_numba = pytest.mark.skipif(not numba_available(), reason="numba kernel unavailable")


def random_states(rng, count):
    x = np.zeros((count, 17))
    x[:, 0:3] = rng.uniform(-10.0, 10.0, (count, 3))
    x[:, 3:5] = rng.uniform(-0.6, 0.6, (count, 2))
    x[:, 5] = rng.uniform(-3.0, 3.0, count)
    x[:, 6:12] = rng.uniform(-1.0, 1.0, (count, 6))
    x[:, 12:17] = rng.uniform(-25.0, 25.0, (count, 5))
    return x


@needs_numba
def test_backends_agree_on_derivative(vehicle, rng):
    fast, slow = get_kernel("numba"), get_kernel("numpy")
    for x in random_states(rng, 200):
        cmd = rng.uniform(-25.0, 25.0, 5)
        np.testing.assert_allclose(fast.derivative(x, cmd, vehicle.params),
                                   slow.derivative(x, cmd, vehicle.params), rtol=1e-12, atol=1e-12)


@needs_numba
def test_backends_agree_on_rk4(vehicle, rng):
    fast, slow = get_kernel("numba"), get_kernel("numpy")
    for x in random_states(rng, 10):
        cmd = rng.uniform(-25.0, 25.0, 5)
        a, ok_a = fast.rk4_advance(x, cmd, 100, 0.01, vehicle.params)
        b, ok_b = slow.rk4_advance(x, cmd, 100, 0.01, vehicle.params)
        assert ok_a and ok_b
        np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-10)


def test_blowup_flag_on_both(vehicle):
    x = np.zeros(17)
    x[6] = 5e6
    for name in ("numba", "numpy") if numba_available() else ("numpy",):
        _, ok = get_kernel(name).rk4_advance(x, np.zeros(5), 1, 0.01, vehicle.params)
        assert not ok


def test_unknown_backend():
    with pytest.raises(ValueError):
        get_kernel("fortran")


def test_env_flag_selects_numpy():
    env = dict(os.environ, HOVERAUV_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "import hoverauv.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    if numba_available():
        assert BACKEND == "numba"
