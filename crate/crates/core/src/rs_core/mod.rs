//! The extended Riemann-Siegel formula for `s = 1/2 + eps + i t`.

mod coeffs;
mod psi;
mod z;

pub use coeffs::{c2_critical, coeff_c, C2Weights};
pub use psi::{psi, MAX_DERIVATIVE};
pub use z::{
    boundaries_between, error_bound, f_factor_log, remainder, rs_params, split_at_boundaries, z,
    z_main_sum, z_star, RSParams, RSPoint, ZValue, EPS_MAX, MAX_ORDER_M, T_MIN,
};
