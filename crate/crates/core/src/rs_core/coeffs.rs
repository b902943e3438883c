//! Remainder coefficients C0, C1, C2 of the extended Riemann-Siegel formula.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::psi::psi_all;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// C2 written as `sum_n w_n * psi^(n)(p)` over n = 0, 2, 4, 6.
///
/// The weights depend on eps only. They are kept in the grouped form in
/// which the coefficient is usually stated, so that the eps = 0 cancellations
/// can be observed term by term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C2Weights {
    pub psi0: Complex64,
    pub psi2: Complex64,
    pub psi4: Complex64,
    pub psi6: Complex64,
}

impl C2Weights {
    pub fn at(eps: f64) -> Self {
        let pi2 = PI * PI;
        let pi3 = pi2 * PI;
        let pi4 = pi2 * pi2;
        let a = (1.0 - 2.0 * eps / 3.0) * (1.0 - 2.0 * eps);
        let b = 1.0 - 0.8 * eps;

        let psi0 = I / (96.0 * PI) * (15.0 * a - 5.0 - 9.0 * b)
            - I * (1.0 + 108.0 * eps - 12.0 * eps * eps) / (96.0 * PI);
        let psi2 = Complex64::from(
            5.0 / (64.0 * pi2) * b - 3.0 / (128.0 * pi2) * a - 5.0 / (128.0 * pi2),
        );
        let psi4 =
            -I * (5.0 - 8.0 * eps) / (512.0 * pi3 * 3.0) + I * 5.0 / (512.0 * pi3 * 3.0);
        let psi6 = Complex64::from(5.0 / (128.0 * pi4 * 720.0));
        Self {
            psi0,
            psi2,
            psi4,
            psi6,
        }
    }

    fn apply(&self, d: &[f64; 7]) -> Complex64 {
        self.psi0 * d[0] + self.psi2 * d[2] + self.psi4 * d[4] + self.psi6 * d[6]
    }
}

/// The reduced critical-line form `psi''/(64 pi^2) + 5 psi^(6)/(128 pi^4 6!)`.
pub fn c2_critical(p: f64) -> Result<f64> {
    check_p(p)?;
    let d = psi_all(p);
    Ok(d[2] / (64.0 * PI * PI) + 5.0 * d[6] / (128.0 * PI.powi(4) * 720.0))
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [0, 1], got {p}")));
    }
    Ok(())
}

/// `C_k(p, eps)` for `k` in 0..=2.
pub fn coeff_c(k: usize, p: f64, eps: f64) -> Result<Complex64> {
    if k > 2 {
        return Err(Error::Domain(format!(
            "remainder coefficients exist for k <= 2, got {k}"
        )));
    }
    check_p(p)?;
    Ok(coeff_from_derivs(k, &psi_all(p), eps))
}

pub(crate) fn coeff_from_derivs(k: usize, d: &[f64; 7], eps: f64) -> Complex64 {
    match k {
        0 => Complex64::from(d[0]),
        1 => -I * d[1] * eps / (4.0 * PI) - Complex64::from(d[3] / (32.0 * PI * PI * 3.0)),
        _ => C2Weights::at(eps).apply(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rs_core::psi;

    #[test]
    fn c0_ignores_eps() {
        for p in [0.0, 0.3, 0.71] {
            assert_eq!(coeff_c(0, p, 0.7).unwrap(), coeff_c(0, p, 0.0).unwrap());
        }
    }

    #[test]
    fn c1_on_the_line_is_real() {
        let p = 0.42;
        let c = coeff_c(1, p, 0.0).unwrap();
        assert_eq!(c.im, 0.0);
        let expected = -psi(p, 3).unwrap() / (96.0 * PI * PI);
        assert!((c.re - expected).abs() < 1e-12);
    }

    #[test]
    fn c2_weights_reduce_on_the_line() {
        let w = C2Weights::at(0.0);
        assert!(w.psi0.norm() < 1e-17);
        assert!(w.psi4.norm() < 1e-17);
        assert!((w.psi2.re - 1.0 / (64.0 * PI * PI)).abs() < 1e-17);
    }

    #[test]
    fn c2_matches_the_reduced_form() {
        for p in [0.05, 0.25, 0.5, 0.83] {
            let c = coeff_c(2, p, 0.0).unwrap();
            assert_eq!(c.im, 0.0);
            assert!((c.re - c2_critical(p).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(coeff_c(3, 0.5, 0.0).is_err());
        assert!(coeff_c(0, 1.5, 0.0).is_err());
    }
}
