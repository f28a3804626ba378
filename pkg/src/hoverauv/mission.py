"""Survey planning: lawnmower waypoints, camera cadence and image overlap."""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import RegionTooSmall

MAX_FRAME_RATE = 10.0
VERTICAL_MODES = ("altitude", "depth")


@dataclass(frozen=True)
class CameraSettings:
    frame_rate: float = 0.25
    exposure_ms: float = 2.0
    aperture: float = 4.0
    focus_m: float = 2.0


@dataclass(frozen=True)
class CameraFootprint:
    """Image footprint at ``reference_altitude`` and pixel resolution."""

    along_track: float = 1.16
    cross_track: float = 1.4
    reference_altitude: float = 2.0
    resolution_mm: float = 0.57

    def __post_init__(self):
        if min(self.along_track, self.cross_track, self.reference_altitude, self.resolution_mm) <= 0.0:
            raise ValueError("footprint dimensions and resolution must be positive")

    def at_altitude(self, H: float) -> tuple[float, float]:
        s = H / self.reference_altitude
        return self.along_track * s, self.cross_track * s


@dataclass(frozen=True)
class MissionPlan:
    """Waypoints as rows (North, East, vertical setpoint).

    The vertical setpoint is an altitude above the seabed or a depth, per
    ``vertical_mode``. A plan without waypoints is the empty mission.
    """

    waypoints: np.ndarray
    speed: float
    spacing: float
    altitude: float
    vertical_mode: str = "altitude"
    camera: CameraSettings = field(default_factory=CameraSettings)

    def __post_init__(self):
        wp = np.asarray(self.waypoints, float).reshape(-1, 3)
        wp.setflags(write=False)
        object.__setattr__(self, "waypoints", wp)
        if wp.shape[0] == 1:
            raise ValueError("a mission needs at least two waypoints")
        if not np.all(np.isfinite(wp)):
            raise ValueError("waypoints must be finite")
        if not self.speed > 0.0 or not self.spacing > 0.0:
            raise ValueError("speed and spacing must be positive")
        if self.vertical_mode not in VERTICAL_MODES:
            raise ValueError(f"vertical_mode must be one of {VERTICAL_MODES}")

    @property
    def path_length(self) -> float:
        if self.waypoints.shape[0] < 2:
            return 0.0
        return float(np.sum(np.hypot(*np.diff(self.waypoints[:, :2], axis=0).T)))

    def to_dict(self) -> dict:
        return {
            "waypoints": self.waypoints.tolist(),
            "speed": self.speed,
            "spacing": self.spacing,
            "altitude": self.altitude,
            "vertical_mode": self.vertical_mode,
            "camera": vars(self.camera).copy(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MissionPlan":
        return cls(np.asarray(d["waypoints"], float), d["speed"], d["spacing"], d["altitude"],
                   d.get("vertical_mode", "altitude"), CameraSettings(**d.get("camera", {})))


def rectangle(origin, length: float, width: float, orientation: float = 0.0) -> np.ndarray:
    """Corners of a rectangle with its first edge ``length`` long at heading ``orientation``."""
    o = np.asarray(origin, float)
    a = length * np.array([math.cos(orientation), math.sin(orientation)])
    b = width * np.array([-math.sin(orientation), math.cos(orientation)])
    return np.array([o, o + a, o + a + b, o + b])


def plan_lawnmower(region, spacing: float, altitude: float, speed: float,
                   camera: CameraSettings | None = None) -> MissionPlan:
    """Boustrophedon transects parallel to the long side of a rectangle.

    ``region`` lists the four corners in order around the rectangle.
    Transects sit at offsets k * spacing from the first long side.
    """
    c = np.asarray(region, float)
    if c.shape != (4, 2):
        raise RegionTooSmall("region must be four (North, East) corners")
    e1, e2 = c[1] - c[0], c[3] - c[0]
    l1, l2 = float(np.hypot(*e1)), float(np.hypot(*e2))
    if min(l1, l2) <= 1e-9:
        raise RegionTooSmall("region is degenerate")
    if abs(float(e1 @ e2)) > 1e-6 * l1 * l2 or not np.allclose(c[2], c[1] + e2, atol=1e-6 * max(l1, l2)):
        raise RegionTooSmall("region corners do not form a rectangle")
    if not spacing > 0.0:
        raise ValueError("spacing must be positive")
    if l2 > l1:
        e1, e2, l1, l2 = e2, e1, l2, l1
    if spacing > l2 * (1.0 + 1e-12):
        raise RegionTooSmall(f"spacing {spacing:g} m exceeds the short side {l2:g} m")
    along, across = e1 / l1, e2 / l2
    n = int(math.floor(l2 / spacing + 1e-9)) + 1
    points = []
    for k in range(n):
        a = c[0] + across * (k * spacing)
        b = a + e1
        points.extend((a, b) if k % 2 == 0 else (b, a))
    wp = np.column_stack((np.array(points), np.full(len(points), altitude)))
    return MissionPlan(wp, speed, spacing, altitude, "altitude", camera or CameraSettings())


def frame_rate(u: float, H: float, O: float, max_rate: float = MAX_FRAME_RATE) -> float:
    """Camera frame rate u / (H (1 - O)), limited to the camera maximum."""
    if not 0.0 <= O < 1.0:
        raise ValueError("overlap fraction must be in [0, 1)")
    if not H > 0.0:
        raise ValueError("altitude must be positive")
    r = u / (H * (1.0 - O))
    if r > max_rate:
        warnings.warn(f"frame rate {r:.3g} fps exceeds the camera limit, clamped to {max_rate:g} fps",
                      stacklevel=2)
        return max_rate
    return r


def overlap_report(footprint: CameraFootprint, plan: MissionPlan, rate: float | None = None,
                   claimed_along: float = 60.0, claimed_cross: float = 45.0) -> dict:
    """Along- and cross-track image overlap in percent, with the claimed values alongside."""
    rate = plan.camera.frame_rate if rate is None else rate
    along, cross = footprint.at_altitude(plan.altitude)
    step = plan.speed / rate
    along_pct = 100.0 * max(0.0, 1.0 - step / along)
    cross_pct = 100.0 * max(0.0, 1.0 - plan.spacing / cross)
    if plan.spacing >= cross:
        warnings.warn(f"transect spacing {plan.spacing:g} m leaves gaps between {cross:.3g} m wide images",
                      stacklevel=2)
    return {
        "frame_rate_fps": rate,
        "frame_spacing_m": step,
        "footprint_along_m": along,
        "footprint_cross_m": cross,
        "along_track_overlap_pct": along_pct,
        "cross_track_overlap_pct": cross_pct,
        "claimed_along_track_pct": claimed_along,
        "claimed_cross_track_pct": claimed_cross,
    }
