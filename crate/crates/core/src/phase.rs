//! Continuous-argument tracking along the two legs of the counting contour.
//!
//! * L1: `s = 1.5 + i t`, `t` from 0 to T, tracking `(s - 1) zeta(s)`.
//! * L2: `s = 1/2 + eps + i T`, `eps` from 1 down to 0, tracking `Z(T, eps)`.
//!
//! Together with the gamma-factor phase these give `pi N(T)`.

use std::f64::consts::PI;
use std::sync::RwLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{phase_increment, ComplexSum, CompensatedSum};
use crate::rs_core;
use crate::special_fn::{gamma_pi_phase_with, BernoulliTable, GammaPhaseOptions};

/// Initial step along L1.
pub const L1_STEP: f64 = 0.25;
/// Initial step along L2.
pub const L2_STEP: f64 = 1.0 / 64.0;
/// Bisection floor.
pub const MIN_STEP: f64 = 1e-9;
/// Raw increments must stay under this before a step is accepted.
pub const MAX_INCREMENT: f64 = PI / 2.0;
/// Default grid for counting sign changes of Im Z along L2.
pub const IM_GRID: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Leg {
    L1Zeta,
    L2Z,
}

/// Parameter samples of a leg.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub leg: Leg,
    pub t_end: f64,
    pub samples: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub param: f64,
    pub value: Complex64,
    /// Unwrapped argument accumulated from the first point.
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTrace {
    pub points: Vec<PhasePoint>,
    pub total: f64,
    /// How many times a step had to be halved.
    pub refined_steps: usize,
}

impl PhaseTrace {
    pub fn path(&self, leg: Leg, t_end: f64) -> Path {
        Path {
            leg,
            t_end,
            samples: self.points.iter().map(|p| p.param).collect(),
        }
    }

    /// Argument of the last sample in (-pi, pi].
    pub fn final_argument(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.value.arg())
    }
}

/// Total continuous argument change along `values`.
///
/// Each raw increment is taken in (-pi, pi]; an increment of magnitude pi
/// cannot be resolved without more samples.
pub fn unwrap(values: &[Complex64]) -> Result<f64> {
    for (i, v) in values.iter().enumerate() {
        if *v == Complex64::new(0.0, 0.0) {
            return Err(Error::NeedsRefinement { at: i as f64 });
        }
    }
    let mut total = CompensatedSum::new();
    for (i, w) in values.windows(2).enumerate() {
        let inc = phase_increment(w[0], w[1]);
        if inc.abs() >= PI * (1.0 - 1e-12) {
            return Err(Error::Ambiguity {
                at: (i + 1) as f64,
                increment: inc,
                step: 1.0,
                suggestion: (i + 1) as f64,
            });
        }
        total += inc;
    }
    Ok(total.value())
}

/// Traces the argument of `f` from `a` to `b`, halving any step whose raw
/// increment reaches pi/2 until `min_step`.
pub fn adaptive_trace<F>(f: F, a: f64, b: f64, max_step: f64, min_step: f64) -> Result<PhaseTrace>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut f = f;
    if a == b {
        return Err(Error::Domain("trace needs distinct endpoints".into()));
    }
    if !(max_step > 0.0 && min_step > 0.0 && min_step <= max_step) {
        return Err(Error::Domain(format!(
            "need 0 < min_step <= max_step, got {min_step}, {max_step}"
        )));
    }
    let fa = f(a)?;
    let start = nonzero(fa, a)?;
    let mut trace = PhaseTrace {
        points: vec![PhasePoint {
            param: a,
            value: start,
            phase: 0.0,
        }],
        total: 0.0,
        refined_steps: 0,
    };
    extend_trace(&mut f, &mut trace, b, max_step, min_step)?;
    Ok(trace)
}

fn nonzero(v: Complex64, at: f64) -> Result<Complex64> {
    if v == Complex64::new(0.0, 0.0) || !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::NeedsRefinement { at });
    }
    Ok(v)
}

/// Continues `trace` from its last point to `b`.
fn extend_trace<F>(
    f: &mut F,
    trace: &mut PhaseTrace,
    b: f64,
    max_step: f64,
    min_step: f64,
) -> Result<()>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let last = *trace.points.last().expect("trace has a start point");
    let dir = if b >= last.param { 1.0 } else { -1.0 };
    let (mut x, mut fx, mut phase) = (last.param, last.value, last.phase);
    let mut h = max_step;
    while (b - x) * dir > 0.0 {
        let mut next = x + dir * h;
        if (b - next) * dir <= 0.0 {
            next = b;
        }
        let fn_ = nonzero(f(next)?, next)?;
        let inc = phase_increment(fx, fn_);
        if inc.abs() < MAX_INCREMENT {
            phase += inc;
            trace.points.push(PhasePoint {
                param: next,
                value: fn_,
                phase,
            });
            x = next;
            fx = fn_;
            h = (2.0 * h).min(max_step);
        } else if (next - x).abs() / 2.0 >= min_step {
            h = (next - x).abs() / 2.0;
            trace.refined_steps += 1;
        } else {
            return Err(Error::Ambiguity {
                at: x,
                increment: inc,
                step: (next - x).abs(),
                suggestion: x + 0.01,
            });
        }
    }
    trace.total = phase;
    Ok(())
}

/// Euler-Maclaurin zeta on `Re s = 1.5` with cached `n^-1.5` and `ln n`.
///
/// Uses `N = max(50, ceil(t/2) + 10)` terms and ten Bernoulli corrections,
/// which keeps the relative error near 1e-10 along the whole leg.
#[derive(Debug, Default)]
struct LineEvaluator {
    ln_n: Vec<f64>,
    pow: Vec<f64>,
}

const L1_SIGMA: f64 = 1.5;
const L1_ORDER: usize = 10;

impl LineEvaluator {
    fn terms_for(t: f64) -> usize {
        50.max((t.abs() / 2.0).ceil() as usize + 10)
    }

    fn ensure(&mut self, n: usize) {
        for k in self.ln_n.len() + 1..=n {
            let l = (k as f64).ln();
            self.ln_n.push(l);
            self.pow.push((-L1_SIGMA * l).exp());
        }
    }

    fn zeta(&mut self, t: f64) -> Complex64 {
        let n_terms = Self::terms_for(t);
        self.ensure(n_terms);
        let s = Complex64::new(L1_SIGMA, t);
        let mut sum = ComplexSum::new();
        for k in 0..n_terms - 1 {
            let (sin, cos) = (t * self.ln_n[k]).sin_cos();
            sum += Complex64::new(self.pow[k] * cos, -self.pow[k] * sin);
        }
        let big_n = n_terms as f64;
        let (sin, cos) = (t * self.ln_n[n_terms - 1]).sin_cos();
        let n_neg_s = Complex64::new(cos, -sin) * self.pow[n_terms - 1];
        sum += n_neg_s * big_n / (s - 1.0);
        sum += n_neg_s * 0.5;
        let table = BernoulliTable::get();
        let inv_n = 1.0 / big_n;
        let mut rising = s;
        let mut factorial = 2.0;
        let mut n_power = n_neg_s * inv_n;
        for k in 1..=L1_ORDER {
            sum += rising * n_power * (table.value_f64(2 * k) / factorial);
            let kk = k as f64;
            rising *= (s + (2.0 * kk - 1.0)) * (s + 2.0 * kk);
            factorial *= (2.0 * kk + 1.0) * (2.0 * kk + 2.0);
            n_power *= inv_n * inv_n;
        }
        sum.value()
    }

    /// `(s - 1) zeta(s)` at `s = 1.5 + i t`.
    fn l1_value(&mut self, t: f64) -> Complex64 {
        Complex64::new(L1_SIGMA - 1.0, t) * self.zeta(t)
    }
}

/// Phase of `(s - 1) zeta(s)` along L1 from `t = 0` to `T`.
pub fn phase_zeta_l1(t_end: f64) -> Result<PhaseTrace> {
    if !(t_end > 2.0) {
        return Err(Error::OutOfRange {
            what: "T",
            value: t_end,
            range: "T > 2",
        });
    }
    let mut ev = LineEvaluator::default();
    adaptive_trace(|t| Ok(ev.l1_value(t)), 0.0, t_end, L1_STEP, MIN_STEP)
}

/// Reusable L1 phase: the trace is extended on demand and prefixes are
/// shared between different T.
///
/// Reads take a shared lock; extending the cached trace takes the exclusive
/// one, so one writer at a time grows it.
#[derive(Debug)]
pub struct ZetaL1Phase {
    inner: RwLock<L1Cache>,
}

#[derive(Debug)]
struct L1Cache {
    ev: LineEvaluator,
    trace: PhaseTrace,
}

impl Default for ZetaL1Phase {
    fn default() -> Self {
        Self::new()
    }
}

impl ZetaL1Phase {
    pub fn new() -> Self {
        let mut ev = LineEvaluator::default();
        let v = ev.l1_value(0.0);
        Self {
            inner: RwLock::new(L1Cache {
                ev,
                trace: PhaseTrace {
                    points: vec![PhasePoint {
                        param: 0.0,
                        value: v,
                        phase: 0.0,
                    }],
                    total: 0.0,
                    refined_steps: 0,
                },
            }),
        }
    }

    /// Largest t covered so far.
    pub fn covered(&self) -> f64 {
        let guard = self.inner.read().expect("L1 cache poisoned");
        guard.trace.points.last().map_or(0.0, |p| p.param)
    }

    /// Extends the cached trace up to `t` (no-op if already covered).
    pub fn extend_to(&self, t: f64) -> Result<()> {
        if self.covered() >= t {
            return Ok(());
        }
        let mut guard = self.inner.write().expect("L1 cache poisoned");
        let cache = &mut *guard;
        if cache.trace.points.last().map_or(0.0, |p| p.param) >= t {
            return Ok(());
        }
        // Extend on the L1_STEP lattice so the cached points do not depend
        // on which T asked first.
        let target = (t / L1_STEP).ceil() * L1_STEP;
        let ev = &mut cache.ev;
        extend_trace(
            &mut |x| Ok(ev.l1_value(x)),
            &mut cache.trace,
            target,
            L1_STEP,
            MIN_STEP,
        )
    }

    /// Unwrapped phase of `(s - 1) zeta(s)` at `s = 1.5 + i t`, measured from `t = 0`.
    pub fn phase_at(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("L1 phase needs t >= 0, got {t}")));
        }
        self.extend_to(t)?;
        let guard = self.inner.read().expect("L1 cache poisoned");
        let pts = &guard.trace.points;
        let i = pts.partition_point(|p| p.param <= t) - 1;
        let base = pts[i];
        if base.param == t {
            return Ok(base.phase);
        }
        // Short local trace from the cached point; uses its own evaluator so
        // readers never need the write lock.
        let mut ev = LineEvaluator::default();
        let mut local = PhaseTrace {
            points: vec![base],
            total: base.phase,
            refined_steps: 0,
        };
        extend_trace(
            &mut |x| Ok(ev.l1_value(x)),
            &mut local,
            t,
            L1_STEP,
            MIN_STEP,
        )?;
        Ok(local.total)
    }
}

/// Which function is tracked along L2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L2Function {
    /// Full Z with remainder order M.
    Z(usize),
    /// The main sum alone.
    ZStar,
}

impl L2Function {
    pub fn eval(&self, t: f64, eps: f64) -> Result<Complex64> {
        match *self {
            L2Function::Z(m) => Ok(rs_core::z(t, eps, m)?.value),
            L2Function::ZStar => rs_core::z_star(t, eps),
        }
    }
}

/// Phase of `Z(T, eps)` as eps runs from 1 to 0.
pub fn phase_z_l2(t_end: f64, m: usize) -> Result<PhaseTrace> {
    phase_l2(t_end, L2Function::Z(m))
}

pub fn phase_l2(t_end: f64, which: L2Function) -> Result<PhaseTrace> {
    if !(t_end >= rs_core::T_MIN) {
        return Err(Error::OutOfRange {
            what: "T",
            value: t_end,
            range: "T >= 30",
        });
    }
    adaptive_trace(|e| which.eval(t_end, e), 1.0, 0.0, L2_STEP, MIN_STEP)
}

/// Sign changes of Im Z(T, eps) over the interior grid `eps = j / IM_GRID`.
pub fn im_zero_count_l2(t_end: f64) -> Result<usize> {
    im_zero_count_l2_with(t_end, L2Function::Z(2), IM_GRID)
}

pub fn im_zero_count_l2_with(t_end: f64, which: L2Function, grid: usize) -> Result<usize> {
    if grid < 2 {
        return Err(Error::Domain("grid needs at least 2 cells".into()));
    }
    let mut count = 0;
    let mut prev: Option<f64> = None;
    for j in 1..grid {
        let im = which.eval(t_end, j as f64 / grid as f64)?.im;
        if im == 0.0 {
            continue;
        }
        if let Some(p) = prev {
            if p.signum() != im.signum() {
                count += 1;
            }
        }
        prev = Some(im);
    }
    Ok(count)
}

/// `(T/2) ln(T / 2 pi e) + 3 pi/8`, plus the O(1/T) gamma corrections at
/// eps = 1 when `corrections` is set.
///
/// This is the gamma-factor phase along L1 with the `pi eps / 4` part
/// removed; that part belongs to the prefactor of Z on L2.
pub fn compensated_gamma_phase(t_end: f64) -> Result<f64> {
    compensated_gamma_phase_with(t_end, true)
}

pub fn compensated_gamma_phase_with(t_end: f64, corrections: bool) -> Result<f64> {
    let opts = GammaPhaseOptions {
        corrections,
        ..GammaPhaseOptions::default()
    };
    let b = gamma_pi_phase_with(t_end, 1.0, &opts)?;
    Ok(compensated_main(t_end) + b.im2 + b.im3)
}

/// The correction-free part `(T/2) ln(T / 2 pi e) + 3 pi/8`.
pub fn compensated_main(t_end: f64) -> f64 {
    t_end / 2.0 * (t_end / (2.0 * PI * std::f64::consts::E)).ln() + 3.0 * PI / 8.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unwrap_examples() {
        assert!((unwrap(&[c(1., 0.), c(0., 1.), c(-1., 0.)]).unwrap() - PI).abs() < 1e-15);
        assert!((unwrap(&[c(1., 0.), c(0., -1.), c(-1., 0.)]).unwrap() + PI).abs() < 1e-15);
        assert_eq!(unwrap(&[c(2., 1.); 4]).unwrap(), 0.0);
        assert!(matches!(
            unwrap(&[c(1., 0.), c(0., 0.)]),
            Err(Error::NeedsRefinement { .. })
        ));
        assert!(matches!(
            unwrap(&[c(1., 0.), c(-1., 0.)]),
            Err(Error::Ambiguity { .. })
        ));
    }

    #[test]
    fn trace_linear_phase() {
        let tr = adaptive_trace(|x| Ok(Complex64::from_polar(1.0, x)), 0.0, 10.0, 0.25, 1e-9)
            .unwrap();
        assert!((tr.total - 10.0).abs() < 1e-12);
        assert_eq!(tr.refined_steps, 0);
    }

    #[test]
    fn trace_quadratic_phase() {
        let tr =
            adaptive_trace(|x| Ok(Complex64::from_polar(1.0, -x * x)), 0.0, 5.0, 0.25, 1e-9)
                .unwrap();
        assert!((tr.total + 25.0).abs() < 1e-9);
        assert!(tr.refined_steps > 0);
    }

    #[test]
    fn trace_through_a_zero_is_ambiguous() {
        // x - 1.1 on the real line: the argument jumps by pi at x = 1.1
        let r = adaptive_trace(|x| Ok(c(x - 1.1, 0.0)), 0.0, 2.0, 0.25, 1e-9);
        assert!(matches!(r, Err(Error::Ambiguity { .. })));
    }

    #[test]
    fn l1_cache_matches_fresh_trace() {
        let cache = ZetaL1Phase::new();
        for t in [40.3, 12.0, 77.77] {
            let fresh = phase_zeta_l1(t).unwrap().total;
            assert!((cache.phase_at(t).unwrap() - fresh).abs() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn compensated_examples() {
        assert!((compensated_main(100.0) - 89.542).abs() < 1e-3);
        assert!((compensated_main(2.0 * PI * std::f64::consts::E) - 3.0 * PI / 8.0).abs() < 1e-13);
    }
}
