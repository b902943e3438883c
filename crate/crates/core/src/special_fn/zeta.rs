//! Euler-Maclaurin evaluation of zeta(s), used as the cross-validation oracle.

use num_complex::Complex64;

use super::bernoulli::{BernoulliTable, MAX_INDEX};
use crate::error::{Error, Result};
use crate::numeric::ComplexSum;

/// Bernoulli correction order used when the caller does not choose one.
pub const DEFAULT_ZETA_ORDER: usize = 6;

/// `max(50, ceil(10 |Im s|))`: keeps the Euler-Maclaurin tail below ~1e-10
/// for `|Im s| <= 1000`.
pub fn default_terms(s: Complex64) -> usize {
    50.max((10.0 * s.im.abs()).ceil() as usize)
}

/// zeta(s) with the default term count and order.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    zeta_em(s, default_terms(s), DEFAULT_ZETA_ORDER)
}

/// Euler-Maclaurin sum
///
/// ```text
/// zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
///         + sum_{k=1}^{K} B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1) + ...
/// ```
///
/// valid for `Re s > -1`, `s != 1`.
pub fn zeta_em(s: Complex64, n_terms: usize, order_k: usize) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    if !(s.re > -1.0) || !s.im.is_finite() {
        return Err(Error::Domain(format!("zeta_em needs Re(s) > -1, got {s}")));
    }
    if n_terms < 10 {
        return Err(Error::Domain(format!(
            "zeta_em needs at least 10 terms, got {n_terms}"
        )));
    }
    if order_k == 0 || 2 * order_k > MAX_INDEX {
        return Err(Error::Domain(format!(
            "Euler-Maclaurin order must be in [1, {}], got {order_k}",
            MAX_INDEX / 2
        )));
    }

    let mut sum = ComplexSum::new();
    for n in 1..n_terms {
        sum += n_pow_neg(n as f64, s);
    }
    let big_n = n_terms as f64;
    let n_neg_s = n_pow_neg(big_n, s);
    sum += n_neg_s * big_n / (s - 1.0);
    sum += n_neg_s * 0.5;

    // term_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
    let table = BernoulliTable::get();
    let inv_n = 1.0 / big_n;
    let mut rising = s; // s(s+1)...(s+2k-2)
    let mut factorial = 2.0; // (2k)!
    let mut n_power = n_neg_s * inv_n; // N^(-s-2k+1)
    for k in 1..=order_k {
        sum += rising * n_power * (table.value_f64(2 * k) / factorial);
        let kk = k as f64;
        rising *= (s + (2.0 * kk - 1.0)) * (s + 2.0 * kk);
        factorial *= (2.0 * kk + 1.0) * (2.0 * kk + 2.0);
        n_power *= inv_n * inv_n;
    }
    Ok(sum.value())
}

#[inline]
fn n_pow_neg(n: f64, s: Complex64) -> Complex64 {
    let ln_n = n.ln();
    let mag = (-s.re * ln_n).exp();
    let (sin, cos) = (s.im * ln_n).sin_cos();
    Complex64::new(mag * cos, -mag * sin)
}
