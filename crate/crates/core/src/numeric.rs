//! Small numerical helpers shared across modules.

use std::f64::consts::PI;
use std::ops::AddAssign;

use num_complex::Complex64;

pub const TWO_PI: f64 = 2.0 * PI;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, x: f64) {
        self.add(x);
    }
}

/// Compensated sum over complex terms (independent real and imaginary carries).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl AddAssign<Complex64> for ComplexSum {
    fn add_assign(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }
}

/// Principal argument of `b / a`, i.e. the phase increment from `a` to `b` in (-pi, pi].
pub fn phase_increment(a: Complex64, b: Complex64) -> f64 {
    (b * a.conj()).arg()
}

/// Distance from `x` to the nearest integer, signed: `x - round(x)`.
pub fn frac_to_nearest(x: f64) -> f64 {
    x - x.round()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancelled_terms() {
        let mut s = CompensatedSum::new();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s += x;
        }
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn phase_increment_is_principal() {
        let a = Complex64::new(1.0, 0.0);
        assert!((phase_increment(a, Complex64::new(0.0, 1.0)) - PI / 2.0).abs() < 1e-15);
        assert!((phase_increment(a, Complex64::new(0.0, -1.0)) + PI / 2.0).abs() < 1e-15);
    }
}
