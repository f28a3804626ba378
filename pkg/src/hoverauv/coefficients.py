"""Hydrodynamic coefficient container and calibration factors.

Names follow SNAME notation in ASCII: ``X_udot`` is the surge added mass,
``X_uu`` the quadratic surge damping X_{u|u|}, ``Y_uv`` the sway body-lift
derivative, and so on. All values are stored with the printed sign, so
dissipative entries are negative and are added to the force balance as is.
"""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import MissingCoefficient, UnknownCoefficient

ADDED_MASS_NAMES = (
    "X_udot", "Y_vdot", "Y_rdot", "Z_wdot", "K_vdot", "K_pdot",
    "N_vdot", "N_pdot", "M_udot", "M_wdot", "M_qdot", "N_rdot",
)
DAMPING_NAMES = (
    "X_uu", "Y_vv", "Z_ww", "K_pp", "K_vv", "K_rr",
    "M_ww", "M_qq", "M_uu", "N_vv", "N_rr",
)
LIFT_NAMES = ("Y_uv", "Z_uw", "M_uw", "N_uv")
ALL_NAMES = ADDED_MASS_NAMES + DAMPING_NAMES + LIFT_NAMES

# diagonal quadratic terms that must oppose motion
DISSIPATIVE_DIAGONAL = ("X_uu", "Y_vv", "Z_ww", "K_pp", "M_qq", "N_rr")

UNITS = {
    "X_udot": "kg", "Y_vdot": "kg", "Z_wdot": "kg",
    "Y_rdot": "kg*m/rad", "N_vdot": "kg*m", "K_vdot": "kg*m",
    "M_udot": "kg*m", "M_wdot": "kg*m",
    "K_pdot": "kg*m^2/rad", "N_pdot": "kg*m^2/rad", "M_qdot": "kg*m^2/rad", "N_rdot": "kg*m^2/rad",
    "X_uu": "kg/m", "Y_vv": "kg/m", "Z_ww": "kg/m",
    "K_vv": "kg", "M_ww": "kg", "M_uu": "kg", "N_vv": "kg",
    "K_pp": "kg*m^2/rad^2", "K_rr": "kg*m^2/rad^2", "M_qq": "kg*m^2/rad^2", "N_rr": "kg*m^2/rad^2",
    "Y_uv": "kg/m", "Z_uw": "kg/m", "M_uw": "kg", "N_uv": "kg",
}

PROVENANCE_TAGS = ("analytic", "cfd", "calibrated")


@dataclass(frozen=True)
class CoefficientSet:
    """Hydrodynamic derivatives with a provenance tag on every entry."""

    values: Mapping[str, float]
    provenance: Mapping[str, str]

    def __post_init__(self):
        values = {str(k): float(v) for k, v in dict(self.values).items()}
        prov = {str(k): str(v) for k, v in dict(self.provenance).items()}
        unknown = sorted(set(values) - set(ALL_NAMES))
        if unknown:
            raise UnknownCoefficient(f"unknown coefficient(s): {', '.join(unknown)}")
        missing_tag = sorted(set(values) - set(prov))
        if missing_tag:
            raise ValueError(f"no provenance tag for: {', '.join(missing_tag)}")
        bad = sorted(k for k in values if prov[k] not in PROVENANCE_TAGS)
        if bad:
            raise ValueError(f"invalid provenance tag for: {', '.join(bad)}")
        object.__setattr__(self, "values", MappingProxyType(values))
        object.__setattr__(self, "provenance", MappingProxyType({k: prov[k] for k in values}))

    @classmethod
    def from_values(cls, values: Mapping[str, float], tag: str = "analytic") -> "CoefficientSet":
        return cls(dict(values), {k: tag for k in values})

    def __getitem__(self, name: str) -> float:
        try:
            return self.values[name]
        except KeyError:
            if name not in ALL_NAMES:
                raise UnknownCoefficient(f"unknown coefficient {name!r}") from None
            raise MissingCoefficient(f"coefficient {name!r} is not set") from None

    def __contains__(self, name: str) -> bool:
        return name in self.values

    def __len__(self) -> int:
        return len(self.values)

    def get(self, name: str, default: float = 0.0) -> float:
        return self.values.get(name, default)

    def require(self, names) -> None:
        missing = [n for n in names if n not in self.values]
        if missing:
            raise MissingCoefficient(f"missing coefficient(s): {', '.join(missing)}")

    def updated(self, values: Mapping[str, float], tag: str) -> "CoefficientSet":
        """Copy with ``values`` overwritten and tagged ``tag``."""
        new_v = dict(self.values)
        new_p = dict(self.provenance)
        for k, v in values.items():
            new_v[k] = v
            new_p[k] = tag
        return CoefficientSet(new_v, new_p)

    def as_dict(self) -> dict[str, float]:
        return dict(self.values)

    def dissipation_violations(self) -> list[str]:
        """Names of diagonal damping terms that do not oppose motion."""
        return [n for n in DISSIPATIVE_DIAGONAL if n in self.values and self.values[n] >= 0.0]


@dataclass(frozen=True)
class CalibrationFactors:
    """Multiplicative factors keyed by coefficient name."""

    factors: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        factors = {str(k): float(v) for k, v in dict(self.factors).items()}
        for k, v in factors.items():
            if k not in ALL_NAMES:
                raise UnknownCoefficient(f"calibration factor for unknown coefficient {k!r}")
            if not v > 0.0:
                raise ValueError(f"calibration factor for {k} must be > 0, got {v}")
        object.__setattr__(self, "factors", MappingProxyType(factors))

    def compose(self, other: "CalibrationFactors") -> "CalibrationFactors":
        out = dict(self.factors)
        for k, v in other.factors.items():
            out[k] = out.get(k, 1.0) * v
        return CalibrationFactors(out)


def apply_calibration(coeffs: CoefficientSet, factors: CalibrationFactors | Mapping[str, float]) -> CoefficientSet:
    """Scale the named coefficients and tag them ``calibrated``."""
    if not isinstance(factors, CalibrationFactors):
        factors = CalibrationFactors(factors)
    scaled = {}
    for name, k in factors.factors.items():
        if name not in coeffs:
            raise UnknownCoefficient(f"calibration factor names {name!r}, which is not in the coefficient set")
        scaled[name] = coeffs[name] * k
    if not scaled:
        return coeffs
    return coeffs.updated(scaled, "calibrated")
