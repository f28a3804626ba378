"""JSON configuration: vehicle, controller gains, mission and environment.

A configuration file holds any subset of the sections ``vehicle``,
``gains``, ``mission``, ``environment`` and ``simulation``; keys are checked
strictly and merged onto the defaults.
"""

import copy
import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .allocation import WeightSchedule
from .coefficients import CalibrationFactors, CoefficientSet, apply_calibration
from .environment import Environment, Seabed
from .errors import ConfigError, HoverAUVError
from .guidance import ControllerGains, PIDGains
from .hydro import HydroOptions, VehicleGeometry, estimate_all
from .mission import CameraSettings, MissionPlan, frame_rate, plan_lawnmower, rectangle
from .propulsion import ThrusterSpec, default_thrusters
from .reference_data import estimated_coefficients, sea_trial_coefficients
from .vehicle import MassProperties

SECTIONS = ("vehicle", "gains", "mission", "environment", "simulation")
COEFFICIENT_SOURCES = ("sea-trial", "estimated", "analytic")


@dataclass(frozen=True)
class MassConfig:
    mass: float = 52.0
    inertia: tuple = (0.35, 11.3, 11.3)
    r_g: tuple = (0.0, 0.0, 0.015)
    r_b: tuple = (0.0, 0.0, 0.0)
    # None: neutrally buoyant at the configured density
    volume: float | None = None

    def properties(self, rho: float, gravity: float) -> MassProperties:
        volume = self.mass / rho if self.volume is None else self.volume
        return MassProperties(self.mass, np.array(self.inertia, float), np.array(self.r_g, float),
                              np.array(self.r_b, float), volume, rho, gravity)


@dataclass(frozen=True)
class VehicleConfig:
    """Everything needed to build the simulated vehicle.

    ``coefficient_source`` picks the base coefficient set; ``overrides`` then
    replace single values and ``calibration`` multiplies them.
    """

    geometry: VehicleGeometry = field(default_factory=VehicleGeometry)
    mass: MassConfig = field(default_factory=MassConfig)
    thrusters: tuple = ()
    coefficient_source: str = "sea-trial"
    overrides: dict = field(default_factory=dict)
    calibration: dict = field(default_factory=dict)
    hydro: HydroOptions = field(default_factory=HydroOptions)
    lag: float = 0.1
    jet_cd: float = 0.05
    roll_torque: bool = True
    weights: WeightSchedule = field(default_factory=WeightSchedule)
    epsilon: float = 1e-6

    def __post_init__(self):
        if self.coefficient_source not in COEFFICIENT_SOURCES:
            raise ConfigError(f"vehicle.coefficients.source must be one of {COEFFICIENT_SOURCES}")
        if not self.thrusters:
            object.__setattr__(self, "thrusters", default_thrusters(self.geometry))
        if len(self.thrusters) != 5:
            raise ConfigError(f"vehicle.thrusters needs 5 entries, got {len(self.thrusters)}")
        if self.lag < 0.0 or self.jet_cd < 0.0 or not self.epsilon > 0.0:
            raise ConfigError("lag and jet_cd must be >= 0 and epsilon > 0")

    def coefficients(self, rho: float = 1025.0) -> CoefficientSet:
        if self.coefficient_source == "sea-trial":
            base = sea_trial_coefficients()
        elif self.coefficient_source == "estimated":
            base = estimated_coefficients()
        else:
            base = estimate_all(self.geometry, rho, self.hydro)
        if self.overrides:
            base = base.updated(self.overrides, base.provenance)
        if self.calibration:
            base = apply_calibration(base, CalibrationFactors(dict(self.calibration)))
        return base


@dataclass(frozen=True)
class MissionConfig:
    """Survey region and settings; explicit ``waypoints`` replace the lawnmower."""

    origin: tuple = (0.0, 0.0)
    length: float = 17.0
    width: float = 15.0
    orientation: float = 0.0
    spacing: float = 1.0
    altitude: float = 2.0
    speed: float = 0.2
    overlap: float = 0.6
    vertical_mode: str = "altitude"
    waypoints: tuple = ()
    camera: CameraSettings = field(default_factory=CameraSettings)

    def plan(self) -> MissionPlan:
        camera = dataclasses.replace(self.camera, frame_rate=frame_rate(self.speed, self.altitude, self.overlap))
        if self.waypoints:
            wp = np.asarray(self.waypoints, float)
            if wp.ndim == 2 and wp.shape[1] == 2:
                wp = np.column_stack((wp, np.full(wp.shape[0], self.altitude)))
            return MissionPlan(wp, self.speed, self.spacing, self.altitude, self.vertical_mode, camera)
        region = rectangle(self.origin, self.length, self.width, self.orientation)
        plan = plan_lawnmower(region, self.spacing, self.altitude, self.speed, camera)
        return dataclasses.replace(plan, vertical_mode=self.vertical_mode)


@dataclass(frozen=True)
class SimulationOptions:
    dt: float = 0.01
    control_period: float = 0.1
    timeout_factor: float = 2.0
    timeout_margin: float = 120.0
    kernel: str | None = None

    def __post_init__(self):
        if not 0.0 < self.dt <= 0.1:
            raise ConfigError("simulation.dt must be in (0, 0.1]")
        ratio = self.control_period / self.dt
        if not self.control_period >= self.dt or abs(ratio - round(ratio)) > 1e-9:
            raise ConfigError("simulation.control_period must be a whole multiple of dt")

    @property
    def substeps(self) -> int:
        return int(round(self.control_period / self.dt))


@dataclass(frozen=True)
class Config:
    vehicle: VehicleConfig = field(default_factory=VehicleConfig)
    gains: ControllerGains = field(default_factory=ControllerGains)
    mission: MissionConfig = field(default_factory=MissionConfig)
    environment: Environment = field(default_factory=Environment)
    simulation: SimulationOptions = field(default_factory=SimulationOptions)

    def to_dict(self) -> dict:
        return to_dict(self)


# ---- dict <-> dataclass

def _plain(v):
    if dataclasses.is_dataclass(v):
        return {f.name: _plain(getattr(v, f.name)) for f in dataclasses.fields(v)}
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (tuple, list)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, np.generic):
        return v.item()
    return v


def _vehicle_dict(v: VehicleConfig) -> dict:
    return {
        "geometry": _plain(v.geometry),
        "mass": _plain(v.mass),
        "thrusters": [_plain(t) for t in v.thrusters],
        "coefficients": {"source": v.coefficient_source, "override": dict(v.overrides),
                         "calibration": dict(v.calibration), "hydro": _plain(v.hydro)},
        "propulsion": {"lag": v.lag, "jet_cd": v.jet_cd, "roll_torque": v.roll_torque},
        "allocation": {"epsilon": v.epsilon, **_plain(v.weights)},
    }


def _environment_dict(e: Environment) -> dict:
    s = e.seabed
    seabed = {"depth": s.depth}
    if s.gridded:
        seabed.update(grid_x=list(s.grid_x), grid_y=list(s.grid_y), grid_depth=_plain(s.grid_depth))
    return {"current": list(e.current), "rho": e.rho, "gravity": e.gravity, "seabed": seabed}


def to_dict(cfg: Config) -> dict:
    return {
        "vehicle": _vehicle_dict(cfg.vehicle),
        "gains": _plain(cfg.gains),
        "mission": _plain(cfg.mission),
        "environment": _environment_dict(cfg.environment),
        "simulation": _plain(cfg.simulation),
    }


def _check_keys(d, allowed, where: str) -> None:
    if not isinstance(d, dict):
        raise ConfigError(f"{where}: expected an object, got {type(d).__name__}")
    extra = sorted(set(d) - set(allowed))
    if extra:
        raise ConfigError(f"{where}: unknown key(s) {', '.join(extra)}")


def _build(cls, d: dict, where: str, convert=None):
    names = [f.name for f in dataclasses.fields(cls)]
    _check_keys(d, names, where)
    kwargs = {}
    for k, v in d.items():
        if convert and k in convert:
            v = convert[k](v, f"{where}.{k}")
        elif isinstance(v, list):
            v = tuple(tuple(x) if isinstance(x, list) else x for x in v)
        kwargs[k] = v
    try:
        return cls(**kwargs)
    except ConfigError:
        raise
    except (HoverAUVError, ValueError, TypeError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _pid(v, where):
    return _build(PIDGains, v, where)


def _vehicle(d: dict) -> VehicleConfig:
    _check_keys(d, ("geometry", "mass", "thrusters", "coefficients", "propulsion", "allocation"), "vehicle")
    geometry = _build(VehicleGeometry, d.get("geometry", {}), "vehicle.geometry")
    mass = _build(MassConfig, d.get("mass", {}), "vehicle.mass")
    thrusters = ()
    if "thrusters" in d:
        if not isinstance(d["thrusters"], list):
            raise ConfigError("vehicle.thrusters: expected a list")
        thrusters = tuple(_build(ThrusterSpec, t, f"vehicle.thrusters[{i}]") for i, t in enumerate(d["thrusters"]))
    coeffs = d.get("coefficients", {})
    _check_keys(coeffs, ("source", "override", "calibration", "hydro"), "vehicle.coefficients")
    prop = d.get("propulsion", {})
    _check_keys(prop, ("lag", "jet_cd", "roll_torque"), "vehicle.propulsion")
    alloc = dict(d.get("allocation", {}))
    epsilon = alloc.pop("epsilon", 1e-6)
    weights = _build(WeightSchedule, alloc, "vehicle.allocation")
    try:
        return VehicleConfig(
            geometry=geometry, mass=mass, thrusters=thrusters,
            coefficient_source=coeffs.get("source", "sea-trial"),
            overrides=dict(coeffs.get("override", {})), calibration=dict(coeffs.get("calibration", {})),
            hydro=_build(HydroOptions, coeffs.get("hydro", {}), "vehicle.coefficients.hydro"),
            weights=weights, epsilon=epsilon, **prop)
    except ConfigError:
        raise
    except (HoverAUVError, ValueError, TypeError) as exc:
        raise ConfigError(f"vehicle: {exc}") from None


def _environment(d: dict) -> Environment:
    _check_keys(d, ("current", "rho", "gravity", "seabed"), "environment")
    d = dict(d)
    seabed = _build(Seabed, d.pop("seabed", {}), "environment.seabed")
    try:
        return Environment(seabed=seabed, **d)
    except (HoverAUVError, ValueError, TypeError) as exc:
        raise ConfigError(f"environment: {exc}") from None


def from_dict(d: dict) -> Config:
    _check_keys(d, SECTIONS, "config")
    gains_conv = {k: _pid for k in ("sway", "surge", "sway_velocity", "heading", "depth")}
    camera = {"camera": lambda v, w: _build(CameraSettings, v, w)}
    return Config(
        vehicle=_vehicle(d.get("vehicle", {})),
        gains=_build(ControllerGains, d.get("gains", {}), "gains", gains_conv),
        mission=_build(MissionConfig, d.get("mission", {}), "mission", camera),
        environment=_environment(d.get("environment", {})),
        simulation=_build(SimulationOptions, d.get("simulation", {}), "simulation"),
    )


def merge(base: dict, update: dict) -> dict:
    """Recursive dict merge; lists and scalars in ``update`` replace."""
    out = copy.deepcopy(base)
    for k, v in update.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = merge(out[k], v)
        else:
            out[k] = copy.deepcopy(v)
    return out


def read_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(d, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return d


def load(*paths) -> Config:
    """Configuration from one or more files, later files overriding earlier ones."""
    merged = {}
    for p in paths:
        d = read_json(p)
        try:
            _check_keys(d, SECTIONS, str(p))
        except ConfigError as exc:
            raise ConfigError(str(exc)) from None
        merged = merge(merged, d)
    return from_dict(merged)


def dump(cfg: Config, path) -> None:
    Path(path).write_text(json.dumps(to_dict(cfg), indent=2) + "\n", encoding="utf-8")
