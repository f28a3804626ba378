"""Published coefficient values of the reference vehicle, used as fixtures and simulation defaults.

Three tables are kept verbatim:

* ``ESTIMATED``: the semi-analytical model estimates (added mass and damping).
  The source lists K_pdot twice with the same value; it is stored once.
* ``ANALYTIC_VS_CFD``: selected damping and lift terms, empirical formula value
  and CFD value side by side. ``*_hull`` rows are bare-hull components.
* ``SEA_TRIAL``: model value, sea-trial calibrated value and the printed
  (rounded) calibration factor.
"""

from .coefficients import CalibrationFactors, CoefficientSet

ESTIMATED = {
    "X_udot": -2.806, "Y_vdot": -78.459, "Y_rdot": -8.529, "K_vdot": 0.216,
    "K_pdot": -0.042, "N_pdot": -0.102, "Z_wdot": -69.536, "M_udot": 0.0321,
    "N_vdot": -8.529, "M_wdot": -11.253, "M_qdot": -20.963, "N_rdot": -22.537,
    "X_uu": -7.616, "Y_vv": -214.398, "Z_ww": -214.398, "M_ww": 26.634,
    "N_vv": -26.17, "K_pp": 0.192, "K_vv": 3.397, "M_qq": -180.682,
    "N_rr": -180.381, "M_uu": 0.144, "K_rr": 0.753,
}

# name -> (analytic, cfd)
ANALYTIC_VS_CFD = {
    "X_uu_hull": (-5.309, -5.008),
    "X_uu": (-7.61, -8.375),
    "M_uu": (0.144, 0.9),
    "Y_vv_hull": (-190.265, -120.834),
    "Y_vv": (-214.398, -146.95),
    "K_vv": (-3.39, -6.5),
    "N_vv_hull": (-42.515, -16.851),
    "N_vv": (-26.17, -12.675),
    "N_rr": (-180.381, -26.377),
    "K_rr": (0.753, 0.558),
    "K_pp": (-0.192, -0.287),
    "M_qq": (-180.68, -34.551),
    "Z_ww_hull": (-190.265, -120.834),
    "Z_ww": (-214.398, -174.525),
    "M_ww_hull": (42.515, 16.851),
    "M_ww": (26.63, 11.4),
    "Y_uv": (-39.71, -35.428),
    "Z_uw": (-39.71, -35.428),
    "M_uw": (-8.498, -3.37),
    "N_uv": (8.498, 3.37),
}

# name -> (model, experiment, printed factor)
SEA_TRIAL = {
    "X_udot": (-2.806, -28.06, 10.0),
    "Y_vdot": (-78.459, -23.53, 0.3),
    "Y_rdot": (-8.529, -2.559, 0.3),
    "Z_wdot": (-69.536, -27.812, 0.4),
    "N_vdot": (-8.529, -2.558, 0.3),
    "M_wdot": (-11.253, -5.626, 0.5),
    "M_qdot": (-20.963, -10.481, 0.5),
    "N_rdot": (-22.537, -11.268, 0.5),
    "X_uu": (-8.375, -15.23, 1.8),
    "Y_vv": (-146.95, -321.597, 2.2),
    "Z_ww": (-174.52, -326.169, 1.86),
    "M_ww": (11.4, 0.096, 0.008),
    "N_vv": (-12.67, -1.954, 0.15),
    "N_rr": (-26.377, -54.114, 2.05),
}


def sea_trial_factors(exact: bool = True) -> CalibrationFactors:
    """Calibration factors for the sea-trial table.

    With ``exact`` the factor is experiment/model, so applying it to the
    model value gives the experiment value to rounding; otherwise the printed
    two-significant-figure factors are returned.
    """
    if exact:
        return CalibrationFactors({k: e / m for k, (m, e, _) in SEA_TRIAL.items()})
    return CalibrationFactors({k: f for k, (_, _, f) in SEA_TRIAL.items()})


def estimated_coefficients() -> CoefficientSet:
    """Model estimates with the lift derivatives from the analytic column."""
    values = dict(ESTIMATED)
    for k in ("Y_uv", "Z_uw", "M_uw", "N_uv"):
        values[k] = ANALYTIC_VS_CFD[k][0]
    return CoefficientSet.from_values(values, "analytic")


def sea_trial_model_coefficients() -> CoefficientSet:
    """Pre-calibration set the sea-trial factors apply to.

    Added mass from the model estimates; damping and lift from CFD where a
    CFD value exists. K_pp comes from CFD because the estimated value has the
    wrong (anti-damping) sign.
    """
    values = dict(ESTIMATED)
    prov = {k: "analytic" for k in values}
    for k, (_, cfd) in ANALYTIC_VS_CFD.items():
        if k.endswith("_hull"):
            continue
        values[k] = cfd
        prov[k] = "cfd"
    # the sea-trial model column rounds some CFD entries differently
    for k, (model, _, _) in SEA_TRIAL.items():
        if k in values and values[k] != model:
            values[k] = model
    return CoefficientSet(values, prov)


def sea_trial_coefficients() -> CoefficientSet:
    """Default simulation set: model values with sea-trial calibration applied."""
    from .coefficients import apply_calibration

    return apply_calibration(sea_trial_model_coefficients(), sea_trial_factors(exact=True))
