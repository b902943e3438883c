//! Bernoulli numbers, Stirling log-gamma, the Riemann-Siegel theta function
//! and an Euler-Maclaurin zeta evaluator.

mod bernoulli;
mod stirling;
mod zeta;

pub use bernoulli::{bernoulli, BernoulliTable};
pub use stirling::{
    gamma_phase_asymptotic, gamma_pi_phase, gamma_pi_phase_with, log_gamma_stirling, theta,
    theta_with_order, GammaPhaseBreakdown, GammaPhaseOptions, StirlingParams, DEFAULT_ORDER,
    MAX_ORDER,
};
pub use zeta::{default_terms as zeta_default_terms, zeta, zeta_em, DEFAULT_ZETA_ORDER};
