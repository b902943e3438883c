//! Stirling expansion of ln Gamma and the gamma-factor phase of xi.
//!
//! Everything is written for `ln Gamma(z + 1)`:
//!
//! ```text
//! ln Gamma(z+1) = -z + (z + 1/2) ln z + ln sqrt(2 pi)
//!               + sum_{k=1}^{K-1} B_2k / (2k (2k-1) z^(2k-1)) + R_2K(z)
//!
//! |R_2K(z)| <= |B_2K / (2K (2K-1) z^(2K-1))| / cos(arg(z)/2)^(2K)
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::{BernoulliTable, MAX_INDEX};
use crate::error::{Error, Result};
use crate::numeric::TWO_PI;

/// Default truncation order K of the Bernoulli tail.
pub const DEFAULT_ORDER: usize = 3;
/// Largest supported K (needs B_2K from the table).
pub const MAX_ORDER: usize = MAX_INDEX / 2;

/// Below this modulus the argument is always shifted up with the recurrence
/// before the series is applied.
const SHIFT_RADIUS: f64 = 10.0;
/// Between `SHIFT_RADIUS` and `SHIFT_CAP` shifting continues until the
/// truncation bound drops under `SHIFT_TARGET`.
const SHIFT_CAP: f64 = 100.0;
const SHIFT_TARGET: f64 = 1e-15;

/// The `(alpha, beta)` parametrisation `z = alpha/4 + beta*eps/2 + i*beta*t/2`
/// that puts the three gamma factors met in xi and Riemann-Siegel under one
/// Stirling expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StirlingParams {
    alpha: i32,
    beta: i32,
    order_k: usize,
}

impl StirlingParams {
    /// `alpha`/`beta` must be one of `(1, 1)`, `(1, -1)`, `(-3, 1)`.
    pub fn new(alpha: i32, beta: i32, order_k: usize) -> Result<Self> {
        if !matches!((alpha, beta), (1, 1) | (1, -1) | (-3, 1)) {
            return Err(Error::Domain(format!(
                "(alpha, beta) = ({alpha}, {beta}) is not one of (1,1), (1,-1), (-3,1)"
            )));
        }
        check_order(order_k)?;
        Ok(Self {
            alpha,
            beta,
            order_k,
        })
    }

    /// ln Gamma(s/2 + 1).
    pub fn gamma_half_s_plus_one(order_k: usize) -> Result<Self> {
        Self::new(1, 1, order_k)
    }

    /// ln Gamma((1-s)/2 + 1).
    pub fn gamma_half_one_minus_s_plus_one(order_k: usize) -> Result<Self> {
        Self::new(1, -1, order_k)
    }

    /// ln Gamma(s/2).
    pub fn gamma_half_s(order_k: usize) -> Result<Self> {
        Self::new(-3, 1, order_k)
    }

    pub fn alpha(&self) -> i32 {
        self.alpha
    }

    pub fn beta(&self) -> i32 {
        self.beta
    }

    pub fn order_k(&self) -> usize {
        self.order_k
    }

    /// Stirling argument at `s = 1/2 + eps + i t`.
    pub fn z(&self, eps: f64, t: f64) -> Complex64 {
        let b = self.beta as f64;
        Complex64::new(self.alpha as f64 / 4.0 + b * eps / 2.0, b * t / 2.0)
    }

    /// Logarithm of the accompanying pi power, `(-1/4 - beta (eps + i t)/2) ln pi`.
    pub fn pi_power_log(&self, eps: f64, t: f64) -> Complex64 {
        let b = self.beta as f64;
        Complex64::new(-0.25 - b * eps / 2.0, -b * t / 2.0) * PI.ln()
    }

    /// `ln Gamma(z + 1)` at `s = 1/2 + eps + i t` for this row.
    pub fn log_gamma(&self, eps: f64, t: f64) -> Result<(Complex64, f64)> {
        log_gamma_stirling(self.z(eps, t), self.order_k)
    }
}

fn check_order(k: usize) -> Result<()> {
    if k == 0 || k > MAX_ORDER {
        return Err(Error::Domain(format!(
            "Stirling order K must be in [1, {MAX_ORDER}], got {k}"
        )));
    }
    Ok(())
}

/// Pieces of the Stirling series at a fixed `z`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StirlingSeries {
    /// `-z + (z + 1/2) ln z + ln sqrt(2 pi)`
    pub leading: Complex64,
    /// `sum_{k<K} B_2k / (2k (2k-1) z^(2k-1))`
    pub tail: Complex64,
    pub remainder_bound: f64,
}

pub(crate) fn stirling_series(z: Complex64, order_k: usize) -> StirlingSeries {
    let ln_z = z.ln();
    let leading = -z + (z + 0.5) * ln_z + 0.5 * TWO_PI.ln();
    let table = BernoulliTable::get();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut power = inv; // z^-(2k-1)
    let mut tail = Complex64::new(0.0, 0.0);
    for k in 1..order_k {
        let kk = k as f64;
        tail += power * (table.value_f64(2 * k) / (2.0 * kk * (2.0 * kk - 1.0)));
        power *= inv2;
    }
    let kk = order_k as f64;
    let last = table.value_f64(2 * order_k).abs() / (2.0 * kk * (2.0 * kk - 1.0)) * power.norm();
    let remainder_bound = last / (z.arg() / 2.0).cos().powi(2 * order_k as i32);
    StirlingSeries {
        leading,
        tail,
        remainder_bound,
    }
}

fn truncation_bound(z: Complex64, order_k: usize) -> f64 {
    let kk = order_k as f64;
    let b = BernoulliTable::get().value_f64(2 * order_k).abs();
    b / (2.0 * kk * (2.0 * kk - 1.0))
        / z.norm().powi(2 * order_k as i32 - 1)
        / (z.arg() / 2.0).cos().powi(2 * order_k as i32)
}

/// `ln Gamma(z + 1)` on the principal branch, with the Stirling truncation bound.
///
/// Small arguments are first shifted with `Gamma(z+1) = Gamma(z+m+1) / prod (z+j)`
/// until the truncation bound is negligible (or the modulus reaches 100);
/// the returned bound then refers to the shifted argument.
pub fn log_gamma_stirling(z: Complex64, order_k: usize) -> Result<(Complex64, f64)> {
    check_order(order_k)?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::Branch { re: z.re, im: z.im });
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < SHIFT_RADIUS
        || (w.norm() < SHIFT_CAP && truncation_bound(w, order_k) > SHIFT_TARGET)
    {
        w += 1.0;
        shift += w.ln();
    }
    let series = stirling_series(w, order_k);
    Ok((
        series.leading + series.tail - shift,
        series.remainder_bound,
    ))
}

/// Decomposition of `ln[Gamma(s/2 + 1) pi^(-s/2)]` at `s = 1/2 + eps + i T`.
///
/// `im1` is the asymptotic phase, `im2` the rest of the leading Stirling term's
/// phase (it vanishes like 1/T), `im3` the phase of the Bernoulli tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPhaseBreakdown {
    pub im1: f64,
    pub im2: f64,
    pub im3: f64,
    pub re1: f64,
    pub re2: f64,
    pub re3: f64,
    pub remainder_bound: f64,
}

impl GammaPhaseBreakdown {
    /// Continuous phase of `Gamma(s/2+1) pi^(-s/2)` measured from `t = 0`.
    pub fn total_phase(&self) -> f64 {
        self.im1 + self.im2 + self.im3
    }

    pub fn log_modulus(&self) -> f64 {
        self.re1 + self.re2 + self.re3
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GammaPhaseOptions {
    pub order_k: usize,
    /// Keep the O(1/T) parts (`im2`, `im3`, `re2`, `re3`). When false they are
    /// reported as zero.
    pub corrections: bool,
}

impl Default for GammaPhaseOptions {
    fn default() -> Self {
        Self {
            order_k: DEFAULT_ORDER,
            corrections: true,
        }
    }
}

/// Asymptotic phase of `Gamma(s/2+1) pi^(-s/2)`:
/// `-T/2 + (T/2) ln(T/2pi) - pi/8 + pi (eps + 2)/4`.
pub fn gamma_phase_asymptotic(t: f64, eps: f64) -> f64 {
    -t / 2.0 + t / 2.0 * (t / TWO_PI).ln() - PI / 8.0 + PI * (eps + 2.0) / 4.0
}

pub fn gamma_pi_phase(t: f64, eps: f64) -> Result<GammaPhaseBreakdown> {
    gamma_pi_phase_with(t, eps, &GammaPhaseOptions::default())
}

pub fn gamma_pi_phase_with(
    t: f64,
    eps: f64,
    opts: &GammaPhaseOptions,
) -> Result<GammaPhaseBreakdown> {
    if !(t >= 10.0) {
        return Err(Error::OutOfRange {
            what: "T",
            value: t,
            range: "T >= 10",
        });
    }
    if !(0.0..=2.0).contains(&eps) {
        return Err(Error::OutOfRange {
            what: "eps",
            value: eps,
            range: "0 <= eps <= 2",
        });
    }
    let row = StirlingParams::gamma_half_s_plus_one(opts.order_k)?;
    let z = row.z(eps, t);
    let series = stirling_series(z, opts.order_k);
    let pi_log = row.pi_power_log(eps, t);

    let im1 = gamma_phase_asymptotic(t, eps);
    let re1 = (0.75 + eps / 2.0) * (t / 2.0).ln() + 0.5 * TWO_PI.ln() - PI * t / 4.0
        + (-0.25 - eps / 2.0) * PI.ln();
    if !opts.corrections {
        return Ok(GammaPhaseBreakdown {
            im1,
            im2: 0.0,
            im3: 0.0,
            re1,
            re2: 0.0,
            re3: 0.0,
            remainder_bound: series.remainder_bound,
        });
    }
    let exact_leading = series.leading + pi_log;
    Ok(GammaPhaseBreakdown {
        im1,
        im2: exact_leading.im - im1,
        im3: series.tail.im,
        re1,
        re2: exact_leading.re - re1,
        re3: series.tail.re,
        remainder_bound: series.remainder_bound,
    })
}

/// Riemann-Siegel theta, `Im ln Gamma(1/4 + i t/2) - (t/2) ln pi`, for `t > 10`.
pub fn theta(t: f64) -> Result<f64> {
    theta_with_order(t, DEFAULT_ORDER)
}

pub fn theta_with_order(t: f64, order_k: usize) -> Result<f64> {
    if !(t > 10.0) {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            range: "t > 10",
        });
    }
    // Gamma(1/4 + it/2) = Gamma(z + 1) with z = -3/4 + it/2
    let (lg, _) = StirlingParams::gamma_half_s(order_k)?.log_gamma(0.0, t)?;
    Ok(lg.im - t / 2.0 * PI.ln())
}
