"""Modelling, thrust allocation and survey simulation for a hovering AUV."""

from .allocation import AllocationProblem, AllocationResult, WeightSchedule, allocate, weight_schedule
from .coefficients import CalibrationFactors, CoefficientSet, apply_calibration
from .config import Config, VehicleConfig
from .environment import Environment, Seabed
from .guidance import ControllerGains, PathSegment, cross_track, los_heading
from .hydro import HydroOptions, VehicleGeometry, estimate_all
from .kernels import BACKEND
from .mission import MissionPlan, frame_rate, overlap_report, plan_lawnmower
from .simulator import build_vehicle, compare, replay, run_mission, step
from .vehicle import BodyVelocity, GeneralizedForce, MassProperties, Pose, VehicleModel

__version__ = "0.1.0"

__all__ = [
    "AllocationProblem", "AllocationResult", "BACKEND", "BodyVelocity", "CalibrationFactors", "CoefficientSet",
    "Config", "ControllerGains", "Environment", "GeneralizedForce", "HydroOptions", "MassProperties",
    "MissionPlan", "PathSegment", "Pose", "Seabed", "VehicleConfig", "VehicleGeometry", "VehicleModel",
    "WeightSchedule", "allocate", "apply_calibration", "build_vehicle", "compare", "cross_track",
    "estimate_all", "frame_rate", "los_heading", "overlap_report", "plan_lawnmower", "replay",
    "run_mission", "step", "weight_schedule",
]
