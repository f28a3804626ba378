import dataclasses
import math
import time

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from hoverauv import hydro
from hoverauv.coefficients import DISSIPATIVE_DIAGONAL
from hoverauv.errors import IntegrationTooCoarse, InvalidGeometry, ReynoldsOutOfRange
from hoverauv.hydro import (
    HydroOptions, VehicleGeometry, axial_damping, body_lift, crossflow_added_mass, crossflow_damping,
    ellipsoid_axial_added_mass, estimate_all, finned_strip_added_mass, ittc57_friction, k1_branch_gap,
    k1_factor, part_contributions, sum_parts,
)
from hoverauv.reference_data import ANALYTIC_VS_CFD, ESTIMATED

from frozen import ITTC57_HULL_REF, SPHEROID_XUDOT_HULL, SPHEROID_XUDOT_THRUSTER

RHO = 1025.0

# Coefficients whose estimated sign differs from the published estimate table.
# K_pp, K_vv: the published estimate and the published analytic column disagree in sign;
#   the estimate matches the analytic column (dissipative K_pp, K_vv < 0).
# K_vdot, N_pdot: mast above the axis (z < 0) and aft of the origin fixes these signs.
# M_ww, N_vv: the aft thrusters and mounts dominate a near fore-aft symmetric hull.
SIGN_ANOMALIES = {"K_pp", "K_vv", "K_vdot", "N_pdot", "M_ww", "N_vv"}


def lamb_oracle(l, d, rho=RHO):
    a, b = l / 2, d / 2
    alpha0 = a * b * b * quad(lambda s: 1.0 / ((a * a + s) ** 1.5 * (b * b + s)), 0, np.inf,
                              epsabs=1e-14, epsrel=1e-13)[0]
    return -alpha0 / (2.0 - alpha0) * (4.0 / 3.0) * math.pi * rho * a * b * b


def test_spheroid_added_mass_frozen_oracle():
    assert lamb_oracle(1.6, 0.23) == pytest.approx(SPHEROID_XUDOT_HULL, rel=1e-10)
    assert ellipsoid_axial_added_mass(1.6, 0.23, RHO) == pytest.approx(SPHEROID_XUDOT_HULL, rel=1e-9)
    assert ellipsoid_axial_added_mass(0.30, 0.135, RHO) == pytest.approx(SPHEROID_XUDOT_THRUSTER, rel=1e-9)


@given(l=st.floats(0.05, 5.0), ratio=st.floats(0.05, 1.0))
def test_spheroid_added_mass_matches_quadrature(l, ratio):
    d = l * ratio
    assert ellipsoid_axial_added_mass(l, d, RHO) == pytest.approx(lamb_oracle(l, d), rel=1e-7)


def test_sphere_limit_is_half_displaced_mass():
    r = 0.2
    displaced = 4.0 / 3.0 * math.pi * r**3 * RHO
    assert ellipsoid_axial_added_mass(2 * r, 2 * r, RHO) == pytest.approx(-0.5 * displaced, rel=1e-12)


def test_series_branch_is_continuous():
    d = 1.0
    e = 0.1
    l = d / math.sqrt(1 - e * e)
    below = ellipsoid_axial_added_mass(l * (1 - 1e-9), d, RHO)
    above = ellipsoid_axial_added_mass(l * (1 + 1e-9), d, RHO)
    assert below == pytest.approx(above, rel=1e-8)


def test_spheroid_rejects_bad_shapes():
    with pytest.raises(InvalidGeometry):
        ellipsoid_axial_added_mass(1.0, 0.0, RHO)
    with pytest.raises(InvalidGeometry):
        ellipsoid_axial_added_mass(0.1, 0.2, RHO)


def test_ittc57_frozen():
    re = 0.2 * 1.6 / 1e-6
    assert ittc57_friction(re) == pytest.approx(ITTC57_HULL_REF, rel=1e-14)
    assert ittc57_friction(re) > 0.0


def test_reynolds_below_range():
    with pytest.raises(ReynoldsOutOfRange):
        ittc57_friction(5e3)
    with pytest.raises(ReynoldsOutOfRange):
        axial_damping(VehicleGeometry(), RHO, reference_speed=0.002)


def test_k1_branches():
    assert k1_factor(100.0) == 1.0
    assert k1_factor(57.5) == pytest.approx(0.58 + 0.17 * math.log10(57.5) ** 1.6)
    assert k1_branch_gap() > 0.0


def test_cylinder_strips_exact():
    r = 0.1
    L = 1.6
    prof = ((-0.774, r), (0.826, r))
    g = VehicleGeometry(profile=prof, b=0.0)
    am = crossflow_added_mass(g, RHO)
    assert am.Y_vdot == pytest.approx(-math.pi * RHO * r * r * L, rel=1e-12)
    # first moment of a uniform strip distribution about the origin
    centre = 0.5 * (-0.774 + 0.826)
    assert am.N_vdot == pytest.approx(-math.pi * RHO * r * r * L * centre, rel=1e-9)


def test_finned_section():
    r = np.array([0.05, 0.1])
    np.testing.assert_allclose(finned_strip_added_mass(r, 0.0, RHO), -math.pi * RHO * r**2)
    b = 0.17
    np.testing.assert_allclose(finned_strip_added_mass(r, b, RHO), -math.pi * RHO * (b**2 - r**2 + r**4 / b**2))
    # no fins: the section term must coincide with the circle at r = b
    np.testing.assert_allclose(finned_strip_added_mass(np.array([b]), b, RHO), -math.pi * RHO * b**2)


def test_integration_too_coarse(monkeypatch):
    monkeypatch.setattr(hydro, "CONVERGENCE_TOL", 1e-15)
    with pytest.raises(IntegrationTooCoarse):
        crossflow_damping(VehicleGeometry(), RHO, n_strips=8)


def test_geometry_validation():
    with pytest.raises(InvalidGeometry):
        VehicleGeometry(d_h=0.0)
    with pytest.raises(InvalidGeometry):
        VehicleGeometry(x_1=-0.8)
    with pytest.raises(InvalidGeometry):
        VehicleGeometry(l_h=1.7)
    with pytest.raises(InvalidGeometry):
        VehicleGeometry(d_th=0.4)


def test_lift_moment_conventions():
    g = VehicleGeometry()
    ratio = body_lift(g, RHO, "ratio")
    assert ratio.M_uw / ratio.Z_uw == pytest.approx(ratio.x_cp, rel=1e-14)
    lever = body_lift(g, RHO)
    assert lever.M_uw == pytest.approx(-ratio.M_uw)
    assert lever.N_uv / lever.Y_uv == pytest.approx(lever.x_cp)
    assert lever.x_cp == pytest.approx(g.x_n - 0.65 * g.l_h)
    # sign pattern of the published analytic lift moments
    assert np.sign(lever.M_uw) == np.sign(ANALYTIC_VS_CFD["M_uw"][0])
    assert np.sign(lever.N_uv) == np.sign(ANALYTIC_VS_CFD["N_uv"][0])


def test_parts_sum_to_total():
    g = VehicleGeometry()
    parts = part_contributions(g, RHO)
    total = estimate_all(g, RHO).as_dict()
    summed = sum_parts(parts)
    for k, v in total.items():
        assert summed[k] == pytest.approx(v, rel=1e-12, abs=1e-15)


def test_dissipative_diagonal_negative():
    c = estimate_all(VehicleGeometry(), RHO)
    for name in DISSIPATIVE_DIAGONAL:
        assert c[name] < 0.0, name
    assert not c.dissipation_violations()


def test_signs_against_published_estimates():
    c = estimate_all(VehicleGeometry(), RHO)
    mismatched = {k for k, v in ESTIMATED.items() if np.sign(v) != np.sign(c[k])}
    assert mismatched == SIGN_ANOMALIES


def test_analytic_column_sign_agreement_for_roll_terms():
    c = estimate_all(VehicleGeometry(), RHO)
    for name in ("K_pp", "K_vv", "K_rr", "M_uu", "X_uu", "Y_vv", "Z_ww", "M_qq", "N_rr"):
        assert np.sign(c[name]) == np.sign(ANALYTIC_VS_CFD[name][0]), name


def test_thruster_count_enters_axial_terms():
    g = VehicleGeometry()
    ax = axial_damping(g, RHO)
    assert ax.combined == pytest.approx(ax.hull + 2 * ax.thruster + ax.mast + 2 * ax.mount + ax.tunnels)
    bare = dataclasses.replace(g, l_th=0.0, d_th=0.0)
    assert axial_damping(bare, RHO).thruster == 0.0


@given(scale=st.floats(0.5, 2.0))
def test_added_mass_scales_with_density(scale):
    g = VehicleGeometry()
    a = estimate_all(g, RHO, HydroOptions(check_convergence=False))
    b = estimate_all(g, RHO * scale, HydroOptions(check_convergence=False))
    for name in ("X_udot", "Y_vdot", "Z_wdot", "M_qdot", "N_rdot"):
        assert b[name] == pytest.approx(scale * a[name], rel=1e-12)


def test_estimate_runtime():
    t0 = time.perf_counter()
    estimate_all(VehicleGeometry(), RHO)
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.xfail(strict=True, reason="the published hull-only sway damping is not reproducible from the "
                   "stated hull dimensions with the cross-flow drag model")
def test_hull_sway_damping_matches_published_hull_value():
    hull = part_contributions(VehicleGeometry(), RHO)["hull"]
    assert hull["Y_vv"] == pytest.approx(ANALYTIC_VS_CFD["Y_vv_hull"][0], rel=0.10)
