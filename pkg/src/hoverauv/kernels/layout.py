"""Packed-array layout shared by the compiled and numpy integration kernels.

The simulator state vector is ``x = [eta(6), nu(6), n(5)]``: Earth-frame pose,
body velocity and achieved thruster speeds in rev/s.
"""

NX = 17
ETA = slice(0, 6)
NU = slice(6, 12)
NTH = slice(12, 17)
N_THRUSTERS = 5

DAMP_NAMES = (
    "X_uu", "Y_vv", "Z_ww", "K_pp", "K_vv", "K_rr", "M_ww", "M_qq",
    "M_uu", "N_vv", "N_rr", "Y_uv", "Z_uw", "M_uw", "N_uv",
)

# rows of the per-thruster parameter table
T_KIND, T_D, T_KT, T_KQ, T_WT, T_TD, T_CJET, T_ATH, T_KTSCALE, T_ASTERN, T_ROTDIR = range(11)
T_COLS = 11
KIND_OPEN = 0.0
KIND_TUNNEL = 1.0

# environment/misc scalars
E_RHO, E_LAG, E_JET, E_ROLL = range(4)
E_COLS = 4

# restoring scalars: W, B, r_g, r_b
R_W, R_B, R_XG, R_YG, R_ZG, R_XB, R_YB, R_ZB = range(8)
R_COLS = 8

BLOWUP = 1e6
