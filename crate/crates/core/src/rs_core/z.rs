//! Z(t, eps): main cosh/sinh sums plus the remainder series.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::coeffs::coeff_from_derivs;
use super::psi::psi_all;
use crate::error::{Error, Result};
use crate::numeric::{ComplexSum, TWO_PI};

/// Smallest ordinate at which the formula is used.
pub const T_MIN: f64 = 30.0;
/// Upper end (exclusive) of the supported distance from the critical line.
pub const EPS_MAX: f64 = 2.0;
/// Highest remainder order.
pub const MAX_ORDER_M: usize = 2;

/// The point `s = 1/2 + eps + i t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RSPoint {
    pub t: f64,
    pub eps: f64,
}

impl RSPoint {
    pub fn new(t: f64, eps: f64) -> Result<Self> {
        check_t(t)?;
        check_eps(eps)?;
        Ok(Self { t, eps })
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(0.5 + self.eps, self.t)
    }
}

/// `N = floor(sqrt(t / 2 pi))`, `p = sqrt(t / 2 pi) - N`, `omega = sqrt(2 pi / t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RSParams {
    pub n: u64,
    pub p: f64,
    pub omega: f64,
}

/// Result of a full evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZValue {
    pub value: Complex64,
    pub order_m: usize,
    /// `e^(-0.1 t)` plus a heuristic truncation allowance `t^(-(2M+3)/4)`.
    pub err_bound: f64,
    pub params: RSParams,
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= T_MIN) || !t.is_finite() {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            range: "t >= 30",
        });
    }
    Ok(())
}

fn check_eps(eps: f64) -> Result<()> {
    if !(0.0..EPS_MAX).contains(&eps) {
        return Err(Error::OutOfRange {
            what: "eps",
            value: eps,
            range: "0 <= eps < 2",
        });
    }
    Ok(())
}

fn check_order(m: usize) -> Result<()> {
    if m > MAX_ORDER_M {
        return Err(Error::Domain(format!(
            "remainder order M must be 0, 1 or 2, got {m}"
        )));
    }
    Ok(())
}

/// Parameters of the formula at `t`. `N` jumps at `t = 2 pi N^2`, where `p`
/// falls from just below 1 to 0.
pub fn rs_params(t: f64) -> Result<RSParams> {
    check_t(t)?;
    Ok(params_unchecked(t))
}

fn params_unchecked(t: f64) -> RSParams {
    let a = (t / TWO_PI).sqrt();
    let n = a.floor();
    RSParams {
        n: n as u64,
        p: (a - n).clamp(0.0, 1.0),
        omega: (TWO_PI / t).sqrt(),
    }
}

/// `2 sum_{n<=N} n^(-1/2) [cosh(eps L_n) cos(phi_n) + i sinh(eps L_n) sin(phi_n)]`
/// with `L_n = ln sqrt(t / 2 pi n^2)` and `phi_n = t ln sqrt(t / 2 e pi n^2) - pi/8`.
pub fn z_main_sum(t: f64, eps: f64) -> Result<Complex64> {
    check_t(t)?;
    check_eps(eps)?;
    Ok(main_sum_unchecked(t, eps, params_unchecked(t).n))
}

fn main_sum_unchecked(t: f64, eps: f64, n_terms: u64) -> Complex64 {
    let half_log = 0.5 * (t / TWO_PI).ln();
    let mut acc = ComplexSum::default();
    for n in 1..=n_terms {
        let nf = n as f64;
        let l = half_log - nf.ln();
        let phi = t * (l - 0.5) - PI / 8.0;
        let (s, c) = phi.sin_cos();
        let el = eps * l;
        let w = 2.0 / nf.sqrt();
        acc += Complex64::new(w * el.cosh() * c, w * el.sinh() * s);
    }
    acc.value()
}

/// `(-1)^(N-1) (2 pi / t)^(1/4) sum_{k<=M} C_k(p, eps) omega^k`.
pub fn remainder(t: f64, eps: f64, m: usize) -> Result<Complex64> {
    check_t(t)?;
    check_eps(eps)?;
    check_order(m)?;
    Ok(remainder_unchecked(eps, m, &params_unchecked(t)))
}

fn remainder_unchecked(eps: f64, m: usize, params: &RSParams) -> Complex64 {
    let d = psi_all(params.p);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut w = 1.0;
    for k in 0..=m {
        sum += coeff_from_derivs(k, &d, eps) * w;
        w *= params.omega;
    }
    let sign = if params.n % 2 == 1 { 1.0 } else { -1.0 };
    sum * (sign * params.omega.sqrt())
}

/// Full Z(t, eps) with remainder order `m`.
pub fn z(t: f64, eps: f64, m: usize) -> Result<ZValue> {
    check_t(t)?;
    check_eps(eps)?;
    check_order(m)?;
    let params = params_unchecked(t);
    let value = main_sum_unchecked(t, eps, params.n) + remainder_unchecked(eps, m, &params);
    Ok(ZValue {
        value,
        order_m: m,
        err_bound: error_bound(t, m),
        params,
    })
}

/// `e^(-0.1 t) + t^(-(2M+3)/4)`.
pub fn error_bound(t: f64, m: usize) -> f64 {
    (-0.1 * t).exp() + t.powf(-((2 * m + 3) as f64) / 4.0)
}

/// Z with the remainder forced to zero: the main sum alone.
///
/// Z* jumps at every `t = 2 pi N^2`; see [`split_at_boundaries`].
pub fn z_star(t: f64, eps: f64) -> Result<Complex64> {
    z_main_sum(t, eps)
}

/// `ln F(t)` with `F(t) = (pi/2)^(1/4) t^(7/4) e^(-pi t / 4)`.
pub fn f_factor_log(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("F(t) needs t > 0, got {t}")));
    }
    Ok(0.25 * (PI / 2.0).ln() + 1.75 * t.ln() - PI * t / 4.0)
}

/// The points `2 pi N^2` strictly inside `(lo, hi)`.
pub fn boundaries_between(lo: f64, hi: f64) -> Vec<f64> {
    let first = (lo.max(0.0) / TWO_PI).sqrt().floor() as u64 + 1;
    (first..)
        .map(|n| TWO_PI * (n * n) as f64)
        .skip_while(|&b| b <= lo)
        .take_while(|&b| b < hi)
        .collect()
}

/// Splits `[lo, hi]` at every interior `2 pi N^2`.
pub fn split_at_boundaries(lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut a = lo;
    for b in boundaries_between(lo, hi) {
        out.push((a, b));
        a = b;
    }
    out.push((a, hi));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_examples() {
        let p = rs_params(100.0).unwrap();
        assert_eq!(p.n, 3);
        assert!((p.p - 0.98942).abs() < 1e-5);
        assert!((p.omega - 0.25066).abs() < 1e-5);
        let b = rs_params(TWO_PI * 16.0).unwrap();
        assert_eq!(b.n, 4);
        assert!(b.p < 1e-12);
        let below = rs_params(TWO_PI * 16.0 - 1e-9).unwrap();
        assert_eq!(below.n, 3);
        assert!(below.p > 1.0 - 1e-9);
        assert!(rs_params(29.9).is_err());
    }

    #[test]
    fn omega_squared_times_t() {
        for t in [31.0, 100.0, 1234.5, 70000.0] {
            let p = rs_params(t).unwrap();
            assert!((p.omega * p.omega * t - TWO_PI).abs() < 1e-12 * t);
        }
    }

    #[test]
    fn sign_factor_at_square_boundary() {
        let t = TWO_PI * 16.0;
        let r = remainder(t, 0.0, 0).unwrap();
        let psi0 = (PI / 8.0).cos();
        assert!((r.re + (TWO_PI / t).powf(0.25) * psi0).abs() < 1e-12);
    }

    #[test]
    fn on_the_line_is_real() {
        for t in [30.0, 77.7, 150.0, 1000.0] {
            for m in 0..=2 {
                assert_eq!(z(t, 0.0, m).unwrap().value.im, 0.0);
            }
        }
    }

    #[test]
    fn z_star_is_z_minus_remainder() {
        let (t, eps) = (250.0, 0.4);
        let zv = z(t, eps, 2).unwrap().value;
        let diff = z_star(t, eps).unwrap() - zv + remainder(t, eps, 2).unwrap();
        assert!(diff.norm() < 1e-14);
    }

    #[test]
    fn f_factor_arithmetic() {
        let v = f_factor_log(100.0).unwrap();
        let e = 0.25 * (PI / 2.0).ln() + 1.75 * 100f64.ln() - 25.0 * PI;
        assert!((v - e).abs() < 1e-12);
        assert!(f_factor_log(0.0).is_err());
    }

    #[test]
    fn boundaries() {
        let b = boundaries_between(98.5, 230.0);
        assert_eq!(b.len(), 3);
        assert!((b[0] - TWO_PI * 16.0).abs() < 1e-12);
        assert!((b[2] - TWO_PI * 36.0).abs() < 1e-12);
        assert_eq!(split_at_boundaries(210.0, 220.0), vec![(210.0, 220.0)]);
        assert_eq!(split_at_boundaries(150.0, 160.0).len(), 2);
    }
}
