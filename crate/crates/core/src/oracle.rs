//! Independent reconstructions used to cross-check the Riemann-Siegel path.
//!
//! Everything here goes through the Euler-Maclaurin zeta and the Stirling
//! log-gamma, never through the Riemann-Siegel sums.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special_fn::{log_gamma_stirling, theta_with_order, zeta};

/// Stirling order used by the oracles.
pub const ORACLE_ORDER: usize = 6;
/// Beyond this ordinate xi itself underflows binary64 quickly; only its
/// logarithm is available.
pub const XI_DIRECT_LIMIT: f64 = 50.0;

/// `ln xi(s)` with `xi(s) = Gamma(s/2 + 1) (s - 1) pi^(-s/2) zeta(s)`.
///
/// The imaginary part is a sum of principal logarithms, so it is the phase of
/// xi only modulo 2 pi.
pub fn xi_log(s: Complex64) -> Result<Complex64> {
    let (lg, _) = log_gamma_stirling(s / 2.0, ORACLE_ORDER)?;
    let z = zeta(s)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain(format!("zeta vanishes at {s}")));
    }
    Ok(lg + (s - 1.0).ln() - s / 2.0 * PI.ln() + z.ln())
}

/// `xi(s)` itself, refused for `|Im s| > 50`.
pub fn xi(s: Complex64) -> Result<Complex64> {
    if s.im.abs() > XI_DIRECT_LIMIT {
        return Err(Error::OutOfRange {
            what: "Im s",
            value: s.im,
            range: "|Im s| <= 50; use xi_log beyond",
        });
    }
    Ok(xi_log(s)?.exp())
}

/// How the exponentially small prefactor is continued off the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FNormalization {
    /// `F(t) e^(i eps pi/4)` with the real-`t` expression of F.
    RealT,
    /// `F(tau)` at `tau = t - i eps`, with `t^(7/4)` continued as `tau^(7/4)`.
    /// Its `e^(-pi tau/4)` factor already carries `e^(i eps pi/4)`.
    Analytic,
}

/// `ln` of the prefactor removed from `-xi` under the chosen continuation.
pub fn f_log(t: f64, eps: f64, norm: FNormalization) -> Complex64 {
    let c = 0.25 * (PI / 2.0).ln();
    match norm {
        FNormalization::RealT => {
            Complex64::new(c + 1.75 * t.ln() - PI * t / 4.0, eps * PI / 4.0)
        }
        FNormalization::Analytic => {
            let tau = Complex64::new(t, -eps);
            c + 1.75 * tau.ln() - PI * tau / 4.0
        }
    }
}

/// `-xi(1/2 + eps + i t) / prefactor`, formed in log space.
pub fn z_via_xi(t: f64, eps: f64, norm: FNormalization) -> Result<Complex64> {
    let s = Complex64::new(0.5 + eps, t);
    Ok(-(xi_log(s)? - f_log(t, eps, norm)).exp())
}

/// `e^(i theta(t)) zeta(1/2 + i t)`; real up to rounding.
pub fn z_critical_via_theta(t: f64) -> Result<Complex64> {
    let th = theta_with_order(t, ORACLE_ORDER)?;
    Ok(Complex64::from_polar(1.0, th) * zeta(Complex64::new(0.5, t))?)
}

/// The classical main sum `2 sum_{n<=N} cos(theta(t) - t ln n) / sqrt n`.
///
/// `full_theta = false` uses `theta ~ (t/2) ln(t/2 pi e) - pi/8`, the
/// truncation implicit in the cosh/sinh form.
pub fn classical_main_sum(t: f64, full_theta: bool) -> Result<f64> {
    let th = if full_theta {
        theta_with_order(t, ORACLE_ORDER)?
    } else {
        t / 2.0 * (t / (2.0 * PI * std::f64::consts::E)).ln() - PI / 8.0
    };
    let n_max = (t / (2.0 * PI)).sqrt().floor() as u64;
    Ok((1..=n_max)
        .map(|n| {
            let nf = n as f64;
            2.0 * (th - t * nf.ln()).cos() / nf.sqrt()
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_is_real_on_the_line() {
        let v = xi(Complex64::new(0.5, 20.0)).unwrap();
        assert!(v.im.abs() < 1e-12 * v.re.abs().max(1e-300));
    }

    #[test]
    fn xi_at_two() {
        // xi(2) = Gamma(2) * 1 * pi^-1 * pi^2/6 = pi/6
        let v = xi(Complex64::new(2.0, 0.0)).unwrap();
        assert!((v.re - PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn direct_xi_is_refused_high_up() {
        assert!(xi(Complex64::new(0.5, 60.0)).is_err());
        assert!(xi_log(Complex64::new(0.5, 60.0)).is_ok());
    }

    #[test]
    fn normalizations_agree_on_the_line() {
        let a = f_log(300.0, 0.0, FNormalization::RealT);
        let b = f_log(300.0, 0.0, FNormalization::Analytic);
        assert!((a - b).norm() < 1e-12);
    }
}
