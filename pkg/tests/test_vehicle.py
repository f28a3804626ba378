import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from hoverauv.coefficients import CoefficientSet
from hoverauv.config import MassConfig
from hoverauv.environment import Environment
from hoverauv.errors import PitchSingularity, SingularInertia
from hoverauv.kernels import get_kernel
from hoverauv.reference_data import sea_trial_coefficients
from hoverauv.simulator import build_vehicle
from hoverauv.vehicle import (
    BodyVelocity, GeneralizedForce, MassProperties, Pose, VehicleModel, added_mass_matrix, coriolis,
    damping_force, dynamics_rhs, euler_rate_matrix, restoring_force, rotation_matrix, wrap_angle,
)

angle = st.floats(-math.pi, math.pi)
vec6 = arrays(np.float64, 6, elements=st.floats(-2.0, 2.0))


def reference_model():
    return VehicleModel(sea_trial_coefficients(), MassConfig().properties(1025.0, 9.81))


def test_wrap_angle_range():
    a = np.array([-3 * math.pi, -math.pi, 0.0, math.pi, 3 * math.pi, 7.0])
    w = wrap_angle(a)
    assert np.all(w > -math.pi) and np.all(w <= math.pi)
    np.testing.assert_allclose(np.cos(w), np.cos(a), atol=1e-12)
    assert wrap_angle(-math.pi) == pytest.approx(math.pi)


@given(phi=angle, theta=st.floats(-1.5, 1.5), psi=angle)
def test_rotation_is_orthonormal(phi, theta, psi):
    R = rotation_matrix(phi, theta, psi)
    np.testing.assert_allclose(R @ R.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(R) == pytest.approx(1.0)


def test_pitch_singularity():
    with pytest.raises(PitchSingularity):
        euler_rate_matrix(0.0, math.pi / 2)
    euler_rate_matrix(0.0, math.pi / 2 - 1e-3)


def test_pose_wraps_and_rejects_nan():
    assert Pose(psi=3 * math.pi).psi == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        Pose(x=math.nan)


@given(nu=vec6)
def test_coriolis_skew_and_powerless(nu):
    model = reference_model()
    for M in (model.M_RB, model.M_A):
        C = coriolis(M, nu)
        np.testing.assert_allclose(C + C.T, 0.0, atol=1e-12)
        assert abs(nu @ C @ nu) < 1e-9


def test_mass_matrix_positive_definite_and_symmetric():
    model = reference_model()
    np.testing.assert_allclose(model.M, model.M.T, atol=1e-12)
    assert np.all(np.linalg.eigvalsh(model.M) > 0.0)


def test_added_mass_layout():
    c = sea_trial_coefficients()
    A = added_mass_matrix(c)
    assert A[0, 0] == -c["X_udot"]
    assert A[4, 0] == A[0, 4] == -c["M_udot"]
    assert A[1, 5] == pytest.approx(-0.5 * (c["Y_rdot"] + c["N_vdot"]))


def test_singular_inertia():
    vals = {n: 0.0 for n in sea_trial_coefficients().as_dict()}
    vals["X_udot"] = 52.0
    mp = MassProperties(52.0, np.diag([0.35, 11.3, 11.3]), volume=0.05)
    with pytest.raises(SingularInertia):
        VehicleModel(CoefficientSet.from_values(vals), mp)


def test_restoring_neutral_and_offsets():
    mp = MassProperties(10.0, np.eye(3), volume=10.0 / 1025.0)
    g = restoring_force(Pose(), mp).as_array()
    np.testing.assert_allclose(g, 0.0, atol=1e-12)
    # CG below CB rights a rolled vehicle: moment opposes phi
    mp = MassProperties(10.0, np.eye(3), r_g=[0, 0, 0.02], volume=10.0 / 1025.0)
    assert restoring_force(Pose(phi=0.2), mp).K < 0.0
    assert restoring_force(Pose(theta=0.2), mp).M < 0.0


def test_damping_opposes_motion_on_diagonal():
    c = sea_trial_coefficients()
    f = damping_force(c, [0.5, 0, 0, 0, 0, 0])
    assert f.X < 0.0
    f = damping_force(c, [0, 0, 0, 0, 0, -0.3])
    assert f.N > 0.0


def test_zero_relative_velocity_gives_zero_damping():
    vehicle = build_vehicle(env=Environment(current=(0.2, -0.1, 0.0)))
    psi = 0.7
    R = rotation_matrix(0.0, 0.0, psi)
    nu = np.zeros(6)
    nu[:3] = R.T @ np.array([0.2, -0.1, 0.0])
    f = damping_force(vehicle.coeffs, nu - np.concatenate((R.T @ np.array([0.2, -0.1, 0.0]), np.zeros(3))))
    np.testing.assert_allclose(f.as_array(), 0.0, atol=1e-15)


def test_equilibrium_is_stationary():
    model = reference_model()
    acc = dynamics_rhs(model, Pose(z=5.0), BodyVelocity(), GeneralizedForce())
    np.testing.assert_allclose(acc, 0.0, atol=1e-12)


def test_surge_acceleration_matches_inertia():
    model = reference_model()
    acc = dynamics_rhs(model, Pose(), BodyVelocity(), GeneralizedForce(X=10.0))
    np.testing.assert_allclose(acc, model.M_inv @ np.array([10.0, 0, 0, 0, 0, 0]), atol=1e-12)


@given(nu=vec6, phi=st.floats(-0.5, 0.5), theta=st.floats(-0.5, 0.5), psi=angle,
       cur=arrays(np.float64, 3, elements=st.floats(-0.5, 0.5)))
def test_kernel_matches_model_equations(nu, phi, theta, psi, cur):
    """The packed kernel reproduces the object-level equations of motion with thrusters idle."""
    env = Environment(current=tuple(cur))
    vehicle = build_vehicle(env=env)
    x = np.zeros(17)
    x[3:6] = phi, theta, psi
    x[6:12] = nu
    xdot = get_kernel("numpy").derivative(x, np.zeros(5), vehicle.params)
    pose = Pose(0, 0, 0, phi, theta, psi)
    acc = dynamics_rhs(vehicle.model, pose, BodyVelocity.from_array(nu), GeneralizedForce(), env)
    np.testing.assert_allclose(xdot[6:12], acc, rtol=1e-9, atol=1e-12)
    R = rotation_matrix(phi, theta, psi)
    np.testing.assert_allclose(xdot[0:3], R @ nu[:3], atol=1e-12)
