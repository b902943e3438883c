//! The Riemann-Siegel interpolating function
//!
//! ```text
//! psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p),   0 <= p <= 1
//! ```
//!
//! and its derivatives. `psi` is entire; the zeros of the denominator at
//! p = 1/4 and 3/4 are removable. Near them a short Taylor expansion replaces
//! the quotient. Derivatives come from a Chebyshev interpolant on [0, 1].

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Highest derivative order served.
pub const MAX_DERIVATIVE: usize = 6;

const CHEB_DEGREE: usize = 64;
/// Coefficients below this are rounding noise of the sampled values; keeping
/// them only amplifies noise in the high derivatives.
const CHEB_NOISE_FLOOR: f64 = 1e-14;
const SERIES_RADIUS: f64 = 1e-3;
const SERIES_TERMS: usize = 6;

/// psi at `p` via the closed form, or the Taylor series near 1/4 and 3/4.
fn psi_value(p: f64) -> f64 {
    let x = p - 0.25;
    if x.abs() < SERIES_RADIUS {
        return horner(&quarter_series().0, x);
    }
    // psi(1 - p) = psi(p)
    let y = 0.75 - p;
    if y.abs() < SERIES_RADIUS {
        return horner(&quarter_series().0, y);
    }
    (2.0 * PI * (p * p - p - 1.0 / 16.0)).cos() / (2.0 * PI * p).cos()
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

struct QuarterSeries([f64; SERIES_TERMS]);

/// Taylor coefficients of psi(1/4 + x).
///
/// With x = p - 1/4 the quotient becomes sin(pi x - 2 pi x^2) / sin(2 pi x);
/// both sides are expanded as power series, divided by x, and divided.
fn quarter_series() -> &'static QuarterSeries {
    static SERIES: OnceLock<QuarterSeries> = OnceLock::new();
    SERIES.get_or_init(|| {
        const LEN: usize = SERIES_TERMS + 1;
        let mut u = [0.0; LEN + 1];
        u[1] = PI;
        u[2] = -2.0 * PI;
        // sin(u) = sum (-1)^j u^(2j+1) / (2j+1)!
        let mut numer = [0.0; LEN + 1];
        let mut power = u;
        let u2 = poly_mul(&u, &u);
        let mut fact = 1.0;
        for j in 0..=LEN / 2 {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            for (n, p) in numer.iter_mut().zip(power.iter()) {
                *n += sign * p / fact;
            }
            power = poly_mul(&power, &u2);
            fact *= ((2 * j + 2) * (2 * j + 3)) as f64;
        }
        // sin(2 pi x) / x
        let mut denom = [0.0; LEN];
        let mut fact = 1.0;
        let mut w = 2.0 * PI;
        for j in 0..=(LEN - 1) / 2 {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            denom[2 * j] = sign * w / fact;
            w *= 4.0 * PI * PI;
            fact *= ((2 * j + 2) * (2 * j + 3)) as f64;
        }
        // (numer / x) / denom
        let num: Vec<f64> = numer[1..].to_vec();
        let mut q = [0.0; SERIES_TERMS];
        for i in 0..SERIES_TERMS {
            let mut acc = num[i];
            for j in 0..i {
                acc -= q[j] * denom[i - j];
            }
            q[i] = acc / denom[0];
        }
        QuarterSeries(q)
    })
}

fn poly_mul<const N: usize>(a: &[f64; N], b: &[f64; N]) -> [f64; N] {
    let mut out = [0.0; N];
    for i in 0..N {
        for j in 0..N - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// Chebyshev expansions of psi and its first six derivatives on [0, 1]
/// (variable x = 2p - 1).
struct PsiInterpolant {
    derivs: [Vec<f64>; MAX_DERIVATIVE + 1],
}

impl PsiInterpolant {
    fn build() -> Self {
        let n = CHEB_DEGREE + 1;
        let samples: Vec<f64> = (0..n)
            .map(|j| {
                let x = (PI * (j as f64 + 0.5) / n as f64).cos();
                psi_value((x + 1.0) / 2.0)
            })
            .collect();
        let mut coeffs: Vec<f64> = (0..n)
            .map(|k| {
                let s: f64 = samples
                    .iter()
                    .enumerate()
                    .map(|(j, f)| f * (PI * k as f64 * (j as f64 + 0.5) / n as f64).cos())
                    .sum();
                2.0 * s / n as f64
            })
            .collect();
        coeffs[0] /= 2.0;
        let keep = coeffs
            .iter()
            .rposition(|c| c.abs() > CHEB_NOISE_FLOOR)
            .map_or(1, |i| i + 1);
        coeffs.truncate(keep);

        let mut derivs: [Vec<f64>; MAX_DERIVATIVE + 1] = Default::default();
        derivs[0] = coeffs;
        for order in 1..=MAX_DERIVATIVE {
            // d/dp = 2 d/dx
            derivs[order] = chebyshev_derivative(&derivs[order - 1])
                .into_iter()
                .map(|c| 2.0 * c)
                .collect();
        }
        Self { derivs }
    }

    fn get() -> &'static PsiInterpolant {
        static INTERP: OnceLock<PsiInterpolant> = OnceLock::new();
        INTERP.get_or_init(Self::build)
    }

    fn eval(&self, p: f64, order: usize) -> f64 {
        clenshaw(&self.derivs[order], 2.0 * p - 1.0)
    }
}

fn chebyshev_derivative(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut d = vec![0.0; n - 1];
    // d_{k-1} = d_{k+1} + 2 k c_k, then halve d_0
    for k in (1..n).rev() {
        let next = if k + 1 < n - 1 { d[k + 1] } else { 0.0 };
        d[k - 1] = next + 2.0 * k as f64 * c[k];
    }
    d[0] /= 2.0;
    d
}

fn clenshaw(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    x * b1 - b2 + c[0]
}

/// `n`-th derivative of psi at `p`, `0 <= p <= 1`, `n <= 6`.
pub fn psi(p: f64, n: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("psi needs 0 <= p <= 1, got {p}")));
    }
    if n > MAX_DERIVATIVE {
        return Err(Error::Domain(format!(
            "psi derivatives are available up to order {MAX_DERIVATIVE}, got {n}"
        )));
    }
    Ok(psi_unchecked(p, n))
}

pub(crate) fn psi_unchecked(p: f64, n: usize) -> f64 {
    if n == 0 {
        psi_value(p)
    } else {
        PsiInterpolant::get().eval(p, n)
    }
}

/// psi and its derivatives 0..=6 at one point.
pub(crate) fn psi_all(p: f64) -> [f64; MAX_DERIVATIVE + 1] {
    let interp = PsiInterpolant::get();
    let mut out = [0.0; MAX_DERIVATIVE + 1];
    out[0] = psi_value(p);
    for (n, v) in out.iter_mut().enumerate().skip(1) {
        *v = interp.eval(p, n);
    }
    out
}
