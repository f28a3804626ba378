"""Water properties, steady current and seabed model."""

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import RegularGridInterpolator


@dataclass(frozen=True)
class Seabed:
    """Seabed depth below the surface, constant or on a regular N/E grid.

    Outside a gridded area the nearest edge value is used.
    """

    depth: float = 10.0
    grid_x: tuple = ()
    grid_y: tuple = ()
    grid_depth: tuple = ()

    def __post_init__(self):
        if self.grid_x:
            gx = np.asarray(self.grid_x, float)
            gy = np.asarray(self.grid_y, float)
            gd = np.asarray(self.grid_depth, float)
            if gd.shape != (gx.size, gy.size):
                raise ValueError(f"seabed grid depth shape {gd.shape} != ({gx.size}, {gy.size})")
            interp = RegularGridInterpolator((gx, gy), gd, bounds_error=False, fill_value=None)
            object.__setattr__(self, "_interp", interp)
            object.__setattr__(self, "_bounds", (gx[0], gx[-1], gy[0], gy[-1]))
        elif not self.depth > 0.0:
            raise ValueError("seabed depth must be > 0")

    @property
    def gridded(self) -> bool:
        return bool(self.grid_x)

    def depth_at(self, x: float, y: float) -> float:
        if not self.gridded:
            return self.depth
        x0, x1, y0, y1 = self._bounds
        pt = np.array([[min(max(x, x0), x1), min(max(y, y0), y1)]])
        return float(self._interp(pt)[0])


@dataclass(frozen=True)
class Environment:
    """Uniform steady current in NED [m/s], water density and seabed."""

    current: tuple = (0.0, 0.0, 0.0)
    rho: float = 1025.0
    gravity: float = 9.81
    seabed: Seabed = field(default_factory=Seabed)

    def __post_init__(self):
        c = tuple(float(v) for v in self.current)
        if len(c) != 3:
            raise ValueError("current must have three NED components")
        object.__setattr__(self, "current", c)
        if not self.rho > 0.0:
            raise ValueError("rho must be > 0")
        if np.linalg.norm(c) >= 2.0:
            raise ValueError("current magnitude must be below 2 m/s")

    @property
    def current_vector(self) -> np.ndarray:
        return np.array(self.current)
