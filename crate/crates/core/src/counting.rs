//! N(T) from the three contour legs, the Backlund-type bounds, and the Z*
//! perturbation experiments.

use std::f64::consts::{E, PI};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::dataio::{format_sig12, parse_field, CsvRecord, ZeroTable};
use crate::error::{Error, Result};
use crate::phase::{compensated_gamma_phase, phase_l2, L2Function, ZetaL1Phase};
use crate::rs_core::{self, boundaries_between, error_bound, split_at_boundaries};

/// Accepted distance (radians) of the leg sum from a multiple of pi.
pub const RESIDUAL_TOL: f64 = 0.05 * PI;

/// `(T / 2 pi) ln(T / 2 pi e)`.
pub fn main_term(t: f64) -> f64 {
    t / (2.0 * PI) * (t / (2.0 * PI * E)).ln()
}

/// Classical bound `0.137 ln T + 0.443 ln ln T + 4.35`.
pub fn backlund_b(t: f64) -> f64 {
    0.137 * t.ln() + 0.443 * t.ln().ln() + 4.35
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountResult {
    pub t: f64,
    pub n: u64,
    pub phase_gamma: f64,
    pub phase_zeta: f64,
    pub phase_z: f64,
    /// `(sum of legs) - pi N`, in radians.
    pub residual: f64,
}

impl CountResult {
    pub fn total(&self) -> f64 {
        self.phase_gamma + self.phase_zeta + self.phase_z
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub t: f64,
    /// `N - main - 3/8`
    pub deviation_38: f64,
    /// `N - main - 7/8`
    pub deviation_78: f64,
    pub backlund_b: f64,
    pub refined_ok_3: bool,
    pub refined_ok_25: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    Computed,
    Ingested,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    OnLine,
    OffLine,
    Unknown,
}

/// A zero located in the `(t, eps)` quarter plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub index: usize,
    pub ordinate: f64,
    /// Distance from the critical line (0 for ingested ordinates).
    pub eps: f64,
    pub source: ZeroSource,
    pub classification: Classification,
}

impl ZeroRecord {
    pub fn ingested(index: usize, ordinate: f64) -> Self {
        Self {
            index,
            ordinate,
            eps: 0.0,
            source: ZeroSource::Ingested,
            classification: Classification::OnLine,
        }
    }
}

/// Zero records for a whole table, indexed from 1.
pub fn ingested_records(table: &ZeroTable) -> Vec<ZeroRecord> {
    table
        .ordinates()
        .iter()
        .enumerate()
        .map(|(i, &t)| ZeroRecord::ingested(i + 1, t))
        .collect()
}

/// Counts zeros by phase tracking; owns the reusable L1 trace.
#[derive(Debug, Default)]
pub struct ZeroCounter {
    l1: ZetaL1Phase,
}

impl ZeroCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Shared process-wide instance.
    pub fn shared() -> &'static ZeroCounter {
        static SHARED: OnceLock<ZeroCounter> = OnceLock::new();
        SHARED.get_or_init(ZeroCounter::new)
    }

    pub fn l1(&self) -> &ZetaL1Phase {
        &self.l1
    }

    /// `N(T)` with Z of remainder order `m` on L2.
    pub fn count(&self, t: f64, m: usize) -> Result<CountResult> {
        self.count_with(t, L2Function::Z(m))
    }

    /// Leg sum without the integer gate; `n` is the nearest integer (clamped at 0).
    pub fn legs(&self, t: f64, which: L2Function) -> Result<CountResult> {
        if !(t >= rs_core::T_MIN) {
            return Err(Error::OutOfRange {
                what: "T",
                value: t,
                range: "T >= 30",
            });
        }
        let phase_gamma = compensated_gamma_phase(t)?;
        let phase_zeta = self.l1.phase_at(t)?;
        let phase_z = phase_l2(t, which)?.total;
        let total = phase_gamma + phase_zeta + phase_z;
        let k = (total / PI).round();
        Ok(CountResult {
            t,
            n: k.max(0.0) as u64,
            phase_gamma,
            phase_zeta,
            phase_z,
            residual: total - k * PI,
        })
    }

    pub fn count_with(&self, t: f64, which: L2Function) -> Result<CountResult> {
        let r = self.legs(t, which)?;
        let k = (r.total() / PI).round();
        if r.residual.abs() >= RESIDUAL_TOL || k < 0.0 {
            return Err(Error::Inconsistency {
                t,
                ratio: r.total() / PI,
                gamma: r.phase_gamma,
                zeta: r.phase_zeta,
                z: r.phase_z,
            });
        }
        Ok(r)
    }

    /// Counts at several T (in parallel) after growing the L1 trace once.
    pub fn count_many(&self, ts: &[f64], m: usize) -> Vec<Result<CountResult>> {
        if let Some(max) = ts.iter().cloned().reduce(f64::max) {
            if let Err(e) = self.l1.extend_to(max) {
                return ts.iter().map(|_| Err(clone_err(&e))).collect();
            }
        }
        ts.par_iter().map(|&t| self.count(t, m)).collect()
    }
}

fn clone_err(e: &Error) -> Error {
    Error::Precondition(e.to_string())
}

/// `N(T)` through the shared counter.
pub fn count_zeros(t: f64, m: usize) -> Result<CountResult> {
    ZeroCounter::shared().count(t, m)
}

pub fn bound_report(t: f64, n: u64) -> Result<BoundReport> {
    if !(t > 10.0) {
        return Err(Error::OutOfRange {
            what: "T",
            value: t,
            range: "T > 10",
        });
    }
    let main = main_term(t);
    let d38 = n as f64 - main - 0.375;
    let d78 = n as f64 - main - 0.875;
    Ok(BoundReport {
        t,
        deviation_38: d38,
        deviation_78: d78,
        backlund_b: backlund_b(t),
        refined_ok_3: d38.abs() < 3.0,
        refined_ok_25: d78.abs() < 2.5,
    })
}

/// `|n_on + 2 n_off - (main + 3/8)|`: an off-line zero in the quarter plane
/// carries a 2 pi phase, an on-line one pi.
pub fn weighted_count(n_on: u64, n_off: u64, t: f64) -> f64 {
    (n_on as f64 + 2.0 * n_off as f64 - (main_term(t) + 0.375)).abs()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sampler {
    /// Midpoints between consecutive ingested ordinates.
    AtZeroGaps,
    /// `T = lo + k * delta`.
    Uniform(f64),
}

/// Bound reports over `(lo, hi]`, with N taken from the ingested table.
pub fn bound_sweep_range(
    table: &ZeroTable,
    lo: f64,
    hi: f64,
    sampler: Sampler,
) -> Result<Vec<BoundReport>> {
    let lo = lo.max(10.0);
    let ts: Vec<f64> = match sampler {
        Sampler::AtZeroGaps => table
            .gap_midpoints()
            .skip_while(|&t| t <= lo)
            .take_while(|&t| t <= hi)
            .collect(),
        Sampler::Uniform(delta) => {
            if !(delta > 0.0) {
                return Err(Error::Domain(format!("sweep step must be positive, got {delta}")));
            }
            let n = ((hi - lo) / delta).floor() as usize;
            (1..=n).map(|k| lo + k as f64 * delta).collect()
        }
    };
    if ts.last().is_some_and(|&t| t > table.last()) {
        return Err(Error::Precondition(format!(
            "sweep reaches T = {hi} beyond the last ingested ordinate {}",
            table.last()
        )));
    }
    ts.par_iter()
        .map(|&t| bound_report(t, table.count_below(t) as u64))
        .collect()
}

/// Sweep from T = 10 up to `t_max`.
pub fn bound_sweep(table: &ZeroTable, t_max: f64, sampler: Sampler) -> Result<Vec<BoundReport>> {
    bound_sweep_range(table, 10.0, t_max, sampler)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub samples: usize,
    pub min_deviation_78: f64,
    pub max_deviation_78: f64,
    pub max_abs_deviation_78: f64,
    pub argmax_abs_deviation_78: f64,
    pub max_abs_deviation_38: f64,
    pub all_refined_ok_3: bool,
    pub all_refined_ok_25: bool,
    /// Smallest `B(T) - |deviation_78|` over the sweep.
    pub min_backlund_margin: f64,
}

pub fn summarize(reports: &[BoundReport]) -> SweepSummary {
    let mut s = SweepSummary {
        samples: reports.len(),
        min_deviation_78: f64::INFINITY,
        max_deviation_78: f64::NEG_INFINITY,
        max_abs_deviation_78: 0.0,
        argmax_abs_deviation_78: f64::NAN,
        max_abs_deviation_38: 0.0,
        all_refined_ok_3: true,
        all_refined_ok_25: true,
        min_backlund_margin: f64::INFINITY,
    };
    for r in reports {
        s.min_deviation_78 = s.min_deviation_78.min(r.deviation_78);
        s.max_deviation_78 = s.max_deviation_78.max(r.deviation_78);
        if r.deviation_78.abs() > s.max_abs_deviation_78 {
            s.max_abs_deviation_78 = r.deviation_78.abs();
            s.argmax_abs_deviation_78 = r.t;
        }
        s.max_abs_deviation_38 = s.max_abs_deviation_38.max(r.deviation_38.abs());
        s.all_refined_ok_3 &= r.refined_ok_3;
        s.all_refined_ok_25 &= r.refined_ok_25;
        s.min_backlund_margin = s
            .min_backlund_margin
            .min(r.backlund_b - r.deviation_78.abs().max(r.deviation_38.abs()));
    }
    s
}

fn range_check(lo: f64, hi: f64) -> Result<()> {
    if !(hi > lo) {
        return Err(Error::Domain(format!("empty range [{lo}, {hi}]")));
    }
    if let Some(&at) = boundaries_between(lo, hi).first() {
        let n = (at / (2.0 * PI)).sqrt().round() as u64;
        return Err(Error::SplitRequired { lo, hi, n, at });
    }
    Ok(())
}

/// Phase of the contour for `which` at T: `pi` times its zero count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSample {
    pub t: f64,
    pub phase_star: f64,
    pub phase_z: f64,
}

/// A step where the Z* contour phase moved by a nonzero multiple of pi
/// beyond what its on-line sign changes account for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseJump {
    pub t: f64,
    pub jump: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanReport {
    pub samples: Vec<ScanSample>,
    pub jumps: Vec<PhaseJump>,
}

/// Sub-samples per scan step used to count sign changes on the line.
const SIGN_SUBSTEPS: usize = 8;

fn sign_changes<F: Fn(f64) -> Result<f64>>(f: F, lo: f64, hi: f64, n: usize) -> Result<usize> {
    let mut count = 0;
    let mut prev = f(lo)?;
    for k in 1..=n {
        let x = lo + (hi - lo) * k as f64 / n as f64;
        let v = f(x)?;
        if v != 0.0 && prev != 0.0 && v.signum() != prev.signum() {
            count += 1;
        }
        if v != 0.0 {
            prev = v;
        }
    }
    Ok(count)
}

fn zstar_line(t: f64) -> Result<f64> {
    Ok(rs_core::z_star(t, 0.0)?.re)
}

/// Scans `[t_lo, t_hi]` for off-line zeros of Z*.
///
/// The range must not cross a `2 pi N^2` point; use [`perturbation_scan_split`]
/// for ranges that do.
pub fn perturbation_scan(t_lo: f64, t_hi: f64, step: f64) -> Result<ScanReport> {
    perturbation_scan_with(ZeroCounter::shared(), t_lo, t_hi, step)
}

pub fn perturbation_scan_with(
    counter: &ZeroCounter,
    t_lo: f64,
    t_hi: f64,
    step: f64,
) -> Result<ScanReport> {
    range_check(t_lo, t_hi)?;
    if !(step > 0.0) {
        return Err(Error::Domain(format!("scan step must be positive, got {step}")));
    }
    counter.l1.extend_to(t_hi)?;
    let n = ((t_hi - t_lo) / step).ceil() as usize;
    let ts: Vec<f64> = (0..=n)
        .map(|k| (t_lo + k as f64 * step).min(t_hi))
        .collect();
    // Samples where either path hits a zero are dropped; the next step spans the gap.
    let samples: Vec<ScanSample> = ts
        .par_iter()
        .filter_map(|&t| {
            let star = counter.legs(t, L2Function::ZStar).ok()?;
            let full = counter.legs(t, L2Function::Z(0)).ok()?;
            Some(ScanSample {
                t,
                phase_star: star.total(),
                phase_z: full.total(),
            })
        })
        .collect();
    let mut jumps = Vec::new();
    for w in samples.windows(2) {
        let crossings = sign_changes(zstar_line, w[0].t, w[1].t, SIGN_SUBSTEPS)?;
        let jump = w[1].phase_star - w[0].phase_star - PI * crossings as f64;
        if (jump / PI).round() != 0.0 {
            jumps.push(PhaseJump {
                t: 0.5 * (w[0].t + w[1].t),
                jump,
            });
        }
    }
    Ok(ScanReport { samples, jumps })
}

/// Runs [`perturbation_scan`] on each piece of `[t_lo, t_hi]` between `2 pi N^2` points.
pub fn perturbation_scan_split(t_lo: f64, t_hi: f64, step: f64) -> Result<ScanReport> {
    let mut out = ScanReport::default();
    for (a, b) in split_at_boundaries(t_lo, t_hi) {
        let r = perturbation_scan(a, b, step)?;
        out.samples.extend(r.samples);
        out.jumps.extend(r.jumps);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LehmerClass {
    /// Z* keeps both zeros on the line.
    OnLinePair,
    /// Z* moves the pair off the line (one off-line zero in the quarter plane).
    OffLinePair,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LehmerReport {
    pub class: LehmerClass,
    pub z_sign_changes: usize,
    pub z_star_sign_changes: usize,
    pub min_abs_z_star: f64,
    /// Z* contour phase gain across the window (only when Z* has no sign change).
    pub phase_gain: Option<f64>,
}

/// Grid density for sign-change counts in a Lehmer window, points per unit t.
const LEHMER_DENSITY: f64 = 4000.0;

/// Classifies what Z* does with the zero pair inside `center +- halfwidth`.
pub fn lehmer_check(center: f64, halfwidth: f64) -> Result<LehmerClass> {
    Ok(lehmer_analysis(center, halfwidth)?.class)
}

pub fn lehmer_analysis(center: f64, halfwidth: f64) -> Result<LehmerReport> {
    lehmer_analysis_with(ZeroCounter::shared(), center, halfwidth)
}

pub fn lehmer_analysis_with(
    counter: &ZeroCounter,
    center: f64,
    halfwidth: f64,
) -> Result<LehmerReport> {
    if !(halfwidth > 0.0) {
        return Err(Error::Domain(format!("halfwidth must be positive, got {halfwidth}")));
    }
    let (lo, hi) = (center - halfwidth, center + halfwidth);
    let z_line = |t: f64| Ok(rs_core::z(t, 0.0, 2)?.value.re);
    let mut z_changes = 0;
    let mut star_changes = 0;
    let mut min_star = f64::INFINITY;
    for (a, b) in split_at_boundaries(lo, hi) {
        let n = (((b - a) * LEHMER_DENSITY).ceil() as usize).max(64);
        z_changes += sign_changes(z_line, a, b, n)?;
        star_changes += sign_changes(zstar_line, a, b, n)?;
        for k in 0..=n {
            let x = a + (b - a) * k as f64 / n as f64;
            min_star = min_star.min(zstar_line(x)?.abs());
        }
    }
    if z_changes != 2 {
        return Err(Error::Precondition(format!(
            "window [{lo}, {hi}] holds {z_changes} zeros of Z, expected 2"
        )));
    }
    if star_changes == 2 {
        return Ok(LehmerReport {
            class: LehmerClass::OnLinePair,
            z_sign_changes: z_changes,
            z_star_sign_changes: star_changes,
            min_abs_z_star: min_star,
            phase_gain: None,
        });
    }
    if star_changes != 0 {
        return Err(Error::Precondition(format!(
            "Z* has {star_changes} sign changes in [{lo}, {hi}]; not a pair"
        )));
    }
    let floor = 10.0 * error_bound(center, 2);
    range_check(lo, hi)?;
    let gain = counter.legs(hi, L2Function::ZStar)?.total() - counter.legs(lo, L2Function::ZStar)?.total();
    if min_star > floor && ((gain / PI).round() - 2.0).abs() < 0.5 {
        Ok(LehmerReport {
            class: LehmerClass::OffLinePair,
            z_sign_changes: z_changes,
            z_star_sign_changes: 0,
            min_abs_z_star: min_star,
            phase_gain: Some(gain),
        })
    } else {
        Err(Error::Precondition(format!(
            "inconclusive: min |Z*| = {min_star:e} (floor {floor:e}), phase gain {gain:.4}"
        )))
    }
}

fn b(v: bool) -> String {
    v.to_string()
}

impl CsvRecord for BoundReport {
    fn header() -> &'static [&'static str] {
        &["T", "deviation_38", "deviation_78", "backlund_B", "refined_ok_3", "refined_ok_25"]
    }
    fn to_fields(&self) -> Vec<String> {
        vec![
            format_sig12(self.t),
            format_sig12(self.deviation_38),
            format_sig12(self.deviation_78),
            format_sig12(self.backlund_b),
            b(self.refined_ok_3),
            b(self.refined_ok_25),
        ]
    }
    fn from_fields(f: &[&str]) -> Result<Self> {
        Ok(Self {
            t: parse_field(f, 0, "T")?,
            deviation_38: parse_field(f, 1, "deviation_38")?,
            deviation_78: parse_field(f, 2, "deviation_78")?,
            backlund_b: parse_field(f, 3, "backlund_B")?,
            refined_ok_3: parse_field(f, 4, "refined_ok_3")?,
            refined_ok_25: parse_field(f, 5, "refined_ok_25")?,
        })
    }
}

impl CsvRecord for CountResult {
    fn header() -> &'static [&'static str] {
        &["T", "N", "phase_gamma", "phase_zeta", "phase_Z", "residual"]
    }
    fn to_fields(&self) -> Vec<String> {
        vec![
            format_sig12(self.t),
            self.n.to_string(),
            format_sig12(self.phase_gamma),
            format_sig12(self.phase_zeta),
            format_sig12(self.phase_z),
            format_sig12(self.residual),
        ]
    }
    fn from_fields(f: &[&str]) -> Result<Self> {
        Ok(Self {
            t: parse_field(f, 0, "T")?,
            n: parse_field(f, 1, "N")?,
            phase_gamma: parse_field(f, 2, "phase_gamma")?,
            phase_zeta: parse_field(f, 3, "phase_zeta")?,
            phase_z: parse_field(f, 4, "phase_Z")?,
            residual: parse_field(f, 5, "residual")?,
        })
    }
}

impl CsvRecord for ZeroRecord {
    fn header() -> &'static [&'static str] {
        &["index", "ordinate", "eps", "source", "classification"]
    }
    fn to_fields(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            format_sig12(self.ordinate),
            format_sig12(self.eps),
            match self.source {
                ZeroSource::Computed => "computed",
                ZeroSource::Ingested => "ingested",
            }
            .into(),
            match self.classification {
                Classification::OnLine => "on_line",
                Classification::OffLine => "off_line",
                Classification::Unknown => "unknown",
            }
            .into(),
        ]
    }
    fn from_fields(f: &[&str]) -> Result<Self> {
        let source = match f.get(3).copied() {
            Some("computed") => ZeroSource::Computed,
            Some("ingested") => ZeroSource::Ingested,
            other => return Err(Error::Domain(format!("bad source {other:?}"))),
        };
        let classification = match f.get(4).copied() {
            Some("on_line") => Classification::OnLine,
            Some("off_line") => Classification::OffLine,
            Some("unknown") => Classification::Unknown,
            other => return Err(Error::Domain(format!("bad classification {other:?}"))),
        };
        Ok(Self {
            index: parse_field(f, 0, "index")?,
            ordinate: parse_field(f, 1, "ordinate")?,
            eps: parse_field(f, 2, "eps")?,
            source,
            classification,
        })
    }
}

impl CsvRecord for PhaseJump {
    fn header() -> &'static [&'static str] {
        &["t", "jump"]
    }
    fn to_fields(&self) -> Vec<String> {
        vec![format_sig12(self.t), format_sig12(self.jump)]
    }
    fn from_fields(f: &[&str]) -> Result<Self> {
        Ok(Self {
            t: parse_field(f, 0, "t")?,
            jump: parse_field(f, 1, "jump")?,
        })
    }
}

impl CsvRecord for ScanSample {
    fn header() -> &'static [&'static str] {
        &["t", "phase_star", "phase_Z"]
    }
    fn to_fields(&self) -> Vec<String> {
        vec![
            format_sig12(self.t),
            format_sig12(self.phase_star),
            format_sig12(self.phase_z),
        ]
    }
    fn from_fields(f: &[&str]) -> Result<Self> {
        Ok(Self {
            t: parse_field(f, 0, "t")?,
            phase_star: parse_field(f, 1, "phase_star")?,
            phase_z: parse_field(f, 2, "phase_Z")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backlund_at_100() {
        assert!((backlund_b(100.0) - 5.657).abs() < 1e-3);
    }

    #[test]
    fn report_at_100() {
        let r = bound_report(100.0, 29).unwrap();
        // main term (100 / 2 pi) ln(100 / 2 pi e) = 28.12734...
        assert!((main_term(100.0) - 28.12734).abs() < 1e-5);
        assert!((r.deviation_78 + 0.00234).abs() < 1e-5, "{}", r.deviation_78);
        assert!(r.refined_ok_25 && r.refined_ok_3);
        assert!(bound_report(5.0, 0).is_err());
    }

    #[test]
    fn weighted_examples() {
        assert!((weighted_count(29, 0, 100.0) - 0.49766).abs() < 1e-5);
        let t = 221.0;
        assert_eq!(weighted_count(80, 0, t), weighted_count(78, 1, t));
        let r = bound_report(t, 80).unwrap();
        assert!((weighted_count(80, 0, t) - r.deviation_38.abs()).abs() < 1e-12);
    }

    #[test]
    fn split_required() {
        assert!(matches!(
            perturbation_scan(150.0, 160.0, 0.5),
            Err(Error::SplitRequired { n: 5, .. })
        ));
    }

    #[test]
    fn count_at_50_and_100() {
        assert_eq!(count_zeros(50.0, 2).unwrap().n, 10);
        assert_eq!(count_zeros(100.0, 2).unwrap().n, 29);
    }
}
