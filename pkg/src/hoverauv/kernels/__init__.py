"""Integration kernel with a numba path and a pure-numpy fallback.

The compiled path is used when numba imports cleanly, unless the environment
variable ``HOVERAUV_DISABLE_NUMBA`` is set to a non-empty value other than
``0``. Both paths expose ``derivative`` and ``rk4_advance`` with the same
signature ``(x, ncmd, [nsteps, dt,] params)``.
"""

import importlib
import os
from typing import NamedTuple

import numpy as np

from . import _numpy
from .layout import NX


class KernelParams(NamedTuple):
    Minv: np.ndarray
    MA: np.ndarray
    MRB: np.ndarray
    damp: np.ndarray
    rest: np.ndarray
    vc: np.ndarray
    thr: np.ndarray
    Bm: np.ndarray
    env: np.ndarray
    kt_J: np.ndarray
    kt_val: np.ndarray
    kt_len: np.ndarray


def _numba_requested() -> bool:
    flag = os.environ.get("HOVERAUV_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


_numba = None
if _numba_requested():
    try:
        _numba = importlib.import_module(f"{__name__}._numba")
    except ImportError:  # numba missing or broken: numpy path only
        _numba = None

BACKEND = "numba" if _numba is not None else "numpy"


class NumpyKernel:
    name = "numpy"

    @staticmethod
    def derivative(x, ncmd, P: KernelParams):
        return _numpy.derivative(np.asarray(x, float), np.asarray(ncmd, float), P)

    @staticmethod
    def rk4_advance(x, ncmd, nsteps, dt, P: KernelParams):
        return _numpy.rk4_advance(x, np.asarray(ncmd, float), int(nsteps), float(dt), P)


class NumbaKernel:
    name = "numba"

    @staticmethod
    def derivative(x, ncmd, P: KernelParams):
        return _numba.derivative(np.asarray(x, float), np.asarray(ncmd, float), *P)

    @staticmethod
    def rk4_advance(x, ncmd, nsteps, dt, P: KernelParams):
        x, ok = _numba.rk4_advance(np.asarray(x, float), np.asarray(ncmd, float),
                                   int(nsteps), float(dt), *P)
        return x, bool(ok)


def get_kernel(name: str | None = None):
    """Return the kernel for ``name`` ("numba" or "numpy"), default the active backend."""
    name = name or BACKEND
    if name == "numba":
        if _numba is None:
            raise RuntimeError("numba kernel requested but numba is unavailable or disabled")
        return NumbaKernel
    if name == "numpy":
        return NumpyKernel
    raise ValueError(f"unknown kernel backend {name!r}")


def numba_available() -> bool:
    return _numba is not None


__all__ = ["BACKEND", "KernelParams", "NX", "get_kernel", "numba_available"]
