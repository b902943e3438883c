//! Zero sets of Re Z and Im Z over a `(t, eps)` rectangle, and their crossings.
//!
//! Curves are extracted by marching squares. Each edge crossing is bisected
//! to 1e-6 and crossings are polished with a two-dimensional Newton step on
//! `(Re, Im)` before classification.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::counting::{Classification, ZeroRecord, ZeroSource};
use crate::dataio::{format_sig12, parse_field, CsvRecord};
use crate::error::{Error, Result};
use crate::rs_core::{self, boundaries_between};

pub const MIN_GRID: usize = 16;
pub const MAX_EPS: f64 = 1.5;
/// Default on/off threshold in eps.
pub const DEFAULT_TOL: f64 = 0.01;
const BISECT_TOL: f64 = 1e-6;
/// Im Z vanishes identically on eps = 0; its sign there is read at this height.
const AXIS_OFFSET: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusFunction {
    Z,
    ZStar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocusGrid {
    pub t_lo: f64,
    pub t_hi: f64,
    pub eps_hi: f64,
    pub nt: usize,
    pub neps: usize,
    pub which: LocusFunction,
    pub order_m: usize,
}

impl LocusGrid {
    pub fn new(
        t_range: (f64, f64),
        eps_hi: f64,
        nt: usize,
        neps: usize,
        which: LocusFunction,
        order_m: usize,
    ) -> Result<Self> {
        let g = Self {
            t_lo: t_range.0,
            t_hi: t_range.1,
            eps_hi,
            nt,
            neps,
            which,
            order_m,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_lo >= rs_core::T_MIN && self.t_hi > self.t_lo) {
            return Err(Error::Domain(format!(
                "need 30 <= t_lo < t_hi, got [{}, {}]",
                self.t_lo, self.t_hi
            )));
        }
        if !(self.eps_hi > 0.0 && self.eps_hi <= MAX_EPS) {
            return Err(Error::OutOfRange {
                what: "eps_hi",
                value: self.eps_hi,
                range: "0 < eps_hi <= 1.5",
            });
        }
        if self.nt < MIN_GRID || self.neps < MIN_GRID {
            return Err(Error::Domain(format!(
                "grid must be at least {MIN_GRID} x {MIN_GRID}, got {} x {}",
                self.nt, self.neps
            )));
        }
        if self.order_m > rs_core::MAX_ORDER_M {
            return Err(Error::Domain(format!("order M = {} > 2", self.order_m)));
        }
        if self.which == LocusFunction::ZStar {
            if let Some(&at) = boundaries_between(self.t_lo, self.t_hi).first() {
                return Err(Error::SplitRequired {
                    lo: self.t_lo,
                    hi: self.t_hi,
                    n: (at / (2.0 * std::f64::consts::PI)).sqrt().round() as u64,
                    at,
                });
            }
        }
        Ok(())
    }

    /// Pieces between `2 pi N^2` points, each with at least `MIN_GRID`
    /// columns and roughly the same column spacing as `self`.
    pub fn split(&self) -> Vec<LocusGrid> {
        let dt = (self.t_hi - self.t_lo) / (self.nt - 1) as f64;
        rs_core::split_at_boundaries(self.t_lo, self.t_hi)
            .into_iter()
            .map(|(a, b)| LocusGrid {
                t_lo: a,
                t_hi: b,
                nt: (((b - a) / dt).round() as usize + 1).max(MIN_GRID),
                ..*self
            })
            .collect()
    }

    /// Same rectangle, twice the resolution in both directions.
    pub fn doubled(&self) -> LocusGrid {
        LocusGrid {
            nt: 2 * self.nt - 1,
            neps: 2 * self.neps - 1,
            ..*self
        }
    }

    fn t_at(&self, i: usize) -> f64 {
        self.t_lo + (self.t_hi - self.t_lo) * i as f64 / (self.nt - 1) as f64
    }

    fn eps_at(&self, j: usize) -> f64 {
        self.eps_hi * j as f64 / (self.neps - 1) as f64
    }

    fn eval(&self, t: f64, eps: f64) -> Result<Complex64> {
        match self.which {
            LocusFunction::Z => Ok(rs_core::z(t, eps, self.order_m)?.value),
            LocusFunction::ZStar => rs_core::z_star(t, eps),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveKind {
    ReZero,
    ImZero,
}

impl CurveKind {
    pub fn label(&self) -> &'static str {
        match self {
            CurveKind::ReZero => "re_zero",
            CurveKind::ImZero => "im_zero",
        }
    }

    fn component(&self, v: Complex64) -> f64 {
        match self {
            CurveKind::ReZero => v.re,
            CurveKind::ImZero => v.im,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocusCurve {
    pub kind: CurveKind,
    /// `(t, eps)` vertices.
    pub points: Vec<(f64, f64)>,
    /// True when vertices were bisected onto the zero set.
    pub refined: bool,
    /// Grid the curve came from; classification re-evaluates the function.
    pub grid: LocusGrid,
}

/// Edge identifier: horizontal edges `(i, j) -> (i+1, j)`, vertical `(i, j) -> (i, j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

struct Field<'a> {
    grid: &'a LocusGrid,
    kind: CurveKind,
    values: Vec<Vec<f64>>,
}

impl Field<'_> {
    fn sample(&self, t: f64, eps: f64) -> Result<f64> {
        let eps = if self.kind == CurveKind::ImZero {
            eps.max(AXIS_OFFSET)
        } else {
            eps
        };
        Ok(self.kind.component(self.grid.eval(t, eps)?))
    }

    fn positive(&self, i: usize, j: usize) -> bool {
        self.values[i][j] > 0.0
    }

    fn crossing(&self, e: Edge) -> Result<(f64, f64)> {
        let g = self.grid;
        let ((t0, e0), (t1, e1), s0) = match e {
            Edge::H(i, j) => (
                (g.t_at(i), g.eps_at(j)),
                (g.t_at(i + 1), g.eps_at(j)),
                self.positive(i, j),
            ),
            Edge::V(i, j) => (
                (g.t_at(i), g.eps_at(j)),
                (g.t_at(i), g.eps_at(j + 1)),
                self.positive(i, j),
            ),
        };
        let (mut a, mut b) = (0.0, 1.0);
        let len = ((t1 - t0).abs()).max((e1 - e0).abs());
        while (b - a) * len > BISECT_TOL {
            let m = 0.5 * (a + b);
            let v = self.sample(t0 + m * (t1 - t0), e0 + m * (e1 - e0))?;
            if (v > 0.0) == s0 {
                a = m;
            } else {
                b = m;
            }
        }
        let m = 0.5 * (a + b);
        Ok((t0 + m * (t1 - t0), e0 + m * (e1 - e0)))
    }
}

fn sample_values(grid: &LocusGrid) -> Result<Vec<Vec<Complex64>>> {
    (0..grid.nt)
        .into_par_iter()
        .map(|i| {
            let t = grid.t_at(i);
            (0..grid.neps)
                .map(|j| {
                    let mut v = grid.eval(t, grid.eps_at(j))?;
                    if j == 0 {
                        v.im = grid.eval(t, AXIS_OFFSET)?.im;
                    }
                    Ok(v)
                })
                .collect()
        })
        .collect()
}

/// Marching squares on Re Z and Im Z. The Im list always contains the
/// `eps = 0` axis, where Im Z vanishes identically.
pub fn trace_locus(grid: &LocusGrid) -> Result<Vec<LocusCurve>> {
    grid.validate()?;
    let raw = sample_values(grid)?;
    let mut out = Vec::new();
    for kind in [CurveKind::ReZero, CurveKind::ImZero] {
        let field = Field {
            grid,
            kind,
            values: raw
                .iter()
                .map(|col| col.iter().map(|v| kind.component(*v)).collect())
                .collect(),
        };
        let segments = cell_segments(&field)?;
        let mut crossings: HashMap<Edge, (f64, f64)> = HashMap::new();
        for &(a, b) in &segments {
            for e in [a, b] {
                if let std::collections::hash_map::Entry::Vacant(slot) = crossings.entry(e) {
                    slot.insert(field.crossing(e)?);
                }
            }
        }
        for chain in chain_segments(&segments) {
            out.push(LocusCurve {
                kind,
                points: chain.iter().map(|e| crossings[e]).collect(),
                refined: true,
                grid: *grid,
            });
        }
    }
    out.push(LocusCurve {
        kind: CurveKind::ImZero,
        points: vec![(grid.t_lo, 0.0), (grid.t_hi, 0.0)],
        refined: false,
        grid: *grid,
    });
    Ok(out)
}

/// Runs [`trace_locus`] on each piece of [`LocusGrid::split`].
pub fn trace_locus_split(grid: &LocusGrid) -> Result<Vec<LocusCurve>> {
    let mut out = Vec::new();
    for g in grid.split() {
        out.extend(trace_locus(&g)?);
    }
    Ok(out)
}

fn cell_segments(f: &Field) -> Result<Vec<(Edge, Edge)>> {
    let g = f.grid;
    let mut segs = Vec::new();
    for i in 0..g.nt - 1 {
        for j in 0..g.neps - 1 {
            // corners counter-clockwise from bottom-left, edges between them
            let s = [
                f.positive(i, j),
                f.positive(i + 1, j),
                f.positive(i + 1, j + 1),
                f.positive(i, j + 1),
            ];
            let edges = [Edge::H(i, j), Edge::V(i + 1, j), Edge::H(i, j + 1), Edge::V(i, j)];
            let cut: Vec<Edge> = (0..4)
                .filter(|&k| s[k] != s[(k + 1) % 4])
                .map(|k| edges[k])
                .collect();
            match cut.len() {
                2 => segs.push((cut[0], cut[1])),
                4 => {
                    let center = f.sample(
                        0.5 * (g.t_at(i) + g.t_at(i + 1)),
                        0.5 * (g.eps_at(j) + g.eps_at(j + 1)),
                    )? > 0.0;
                    // cut[k] lies between corners k and k+1. The center joins
                    // the region of corners with the same sign; split so that
                    // corner 0 is isolated when it differs from the center.
                    if center == s[0] {
                        segs.push((cut[0], cut[1]));
                        segs.push((cut[2], cut[3]));
                    } else {
                        segs.push((cut[3], cut[0]));
                        segs.push((cut[1], cut[2]));
                    }
                }
                _ => {}
            }
        }
    }
    Ok(segs)
}

/// Joins segments sharing an edge into polylines.
fn chain_segments(segs: &[(Edge, Edge)]) -> Vec<Vec<Edge>> {
    let mut adj: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, &(a, b)) in segs.iter().enumerate() {
        adj.entry(a).or_default().push(k);
        adj.entry(b).or_default().push(k);
    }
    let mut used = vec![false; segs.len()];
    let mut chains = Vec::new();
    // Start from open ends first, then close the remaining loops.
    let mut starts: Vec<usize> = (0..segs.len()).collect();
    starts.sort_by_key(|&k| {
        let (a, b) = segs[k];
        let open = adj[&a].len() == 1 || adj[&b].len() == 1;
        (!open, k)
    });
    for k in starts {
        if used[k] {
            continue;
        }
        used[k] = true;
        let (a, b) = segs[k];
        let (first, mut cur) = if adj[&b].len() == 1 { (b, a) } else { (a, b) };
        let mut chain = vec![first, cur];
        loop {
            let next = adj[&cur].iter().copied().find(|&s| !used[s]);
            let Some(s) = next else { break };
            used[s] = true;
            let (x, y) = segs[s];
            cur = if x == cur { y } else { x };
            chain.push(cur);
        }
        chains.push(chain);
    }
    chains
}

fn segment_intersection(
    p: (f64, f64),
    p2: (f64, f64),
    q: (f64, f64),
    q2: (f64, f64),
) -> Option<(f64, f64)> {
    let r = (p2.0 - p.0, p2.1 - p.1);
    let s = (q2.0 - q.0, q2.1 - q.1);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom == 0.0 {
        return None;
    }
    let qp = (q.0 - p.0, q.1 - p.1);
    let u = (qp.0 * s.1 - qp.1 * s.0) / denom;
    let v = (qp.0 * r.1 - qp.1 * r.0) / denom;
    const SLACK: f64 = 1e-9;
    if (-SLACK..=1.0 + SLACK).contains(&u) && (-SLACK..=1.0 + SLACK).contains(&v) {
        Some((p.0 + u * r.0, p.1 + u * r.1))
    } else {
        None
    }
}

/// Newton iteration on `(Re, Im) = 0` in `(t, eps)`, kept inside the grid.
fn polish(grid: &LocusGrid, start: (f64, f64)) -> Result<(f64, f64)> {
    const H: f64 = 1e-6;
    let (mut t, mut e) = start;
    for _ in 0..30 {
        let f = grid.eval(t, e)?;
        let ft = (grid.eval(t + H, e)? - grid.eval(t - H, e)?) / (2.0 * H);
        let fe = if e >= H {
            (grid.eval(t, e + H)? - grid.eval(t, e - H)?) / (2.0 * H)
        } else {
            (grid.eval(t, e + H)? - f) / H
        };
        let det = ft.re * fe.im - fe.re * ft.im;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dt = (f.re * fe.im - fe.re * f.im) / det;
        let de = (ft.re * f.im - f.re * ft.im) / det;
        t = (t - dt).clamp(grid.t_lo, grid.t_hi);
        e = (e - de).clamp(0.0, grid.eps_hi);
        if dt.abs() < 1e-13 && de.abs() < 1e-13 {
            break;
        }
    }
    Ok((t, e))
}

/// Crossings of re_zero with im_zero curves, polished and classified.
pub fn classify_intersections(curves: &[LocusCurve], tol: f64) -> Result<Vec<ZeroRecord>> {
    let mut found: Vec<(f64, f64)> = Vec::new();
    for re in curves.iter().filter(|c| c.kind == CurveKind::ReZero) {
        for im in curves
            .iter()
            .filter(|c| c.kind == CurveKind::ImZero && c.grid == re.grid)
        {
            for a in re.points.windows(2) {
                for b in im.points.windows(2) {
                    if let Some(x) = segment_intersection(a[0], a[1], b[0], b[1]) {
                        let p = polish(&re.grid, x)?;
                        let dup = found
                            .iter()
                            .any(|q| (q.0 - p.0).abs() < 1e-6 && (q.1 - p.1).abs() < 1e-6);
                        if !dup {
                            found.push(p);
                        }
                    }
                }
            }
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    Ok(found
        .into_iter()
        .enumerate()
        .map(|(k, (t, eps))| ZeroRecord {
            index: k + 1,
            ordinate: t,
            eps,
            source: ZeroSource::Computed,
            classification: if eps < tol {
                Classification::OnLine
            } else {
                Classification::OffLine
            },
        })
        .collect())
}

/// One vertex of a locus curve, flattened for CSV output.
#[derive(Debug, Clone, PartialEq)]
pub struct LocusPoint {
    pub curve: usize,
    pub kind: String,
    pub t: f64,
    pub eps: f64,
}

pub fn flatten(curves: &[LocusCurve]) -> Vec<LocusPoint> {
    curves
        .iter()
        .enumerate()
        .flat_map(|(k, c)| {
            c.points.iter().map(move |&(t, eps)| LocusPoint {
                curve: k,
                kind: c.kind.label().to_string(),
                t,
                eps,
            })
        })
        .collect()
}

impl CsvRecord for LocusPoint {
    fn header() -> &'static [&'static str] {
        &["curve", "kind", "t", "eps"]
    }
    fn to_fields(&self) -> Vec<String> {
        vec![
            self.curve.to_string(),
            self.kind.clone(),
            format_sig12(self.t),
            format_sig12(self.eps),
        ]
    }
    fn from_fields(f: &[&str]) -> Result<Self> {
        Ok(Self {
            curve: parse_field(f, 0, "curve")?,
            kind: parse_field(f, 1, "kind")?,
            t: parse_field(f, 2, "t")?,
            eps: parse_field(f, 3, "eps")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(LocusGrid::new((210.0, 230.0), 1.0, 8, 32, LocusFunction::Z, 2).is_err());
        assert!(LocusGrid::new((210.0, 230.0), 1.6, 32, 32, LocusFunction::Z, 2).is_err());
        assert!(matches!(
            LocusGrid::new((210.0, 230.0), 1.0, 32, 32, LocusFunction::ZStar, 0),
            Err(Error::SplitRequired { n: 6, .. })
        ));
        let g = LocusGrid {
            t_lo: 210.0,
            t_hi: 230.0,
            eps_hi: 1.0,
            nt: 201,
            neps: 32,
            which: LocusFunction::ZStar,
            order_m: 0,
        };
        let parts = g.split();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.validate().is_ok()));
    }

    #[test]
    fn axis_is_an_im_zero_curve() {
        let g = LocusGrid::new((100.0, 102.0), 0.5, 16, 16, LocusFunction::Z, 2).unwrap();
        let curves = trace_locus(&g).unwrap();
        assert!(curves
            .iter()
            .any(|c| c.kind == CurveKind::ImZero && c.points.iter().all(|p| p.1 == 0.0)));
    }

    #[test]
    fn empty_curve_set() {
        assert!(classify_intersections(&[], 0.01).unwrap().is_empty());
    }

    #[test]
    fn segments_cross() {
        let x = segment_intersection((0.0, 0.0), (1.0, 1.0), (0.0, 1.0), (1.0, 0.0)).unwrap();
        assert!((x.0 - 0.5).abs() < 1e-15 && (x.1 - 0.5).abs() < 1e-15);
        assert!(segment_intersection((0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)).is_none());
    }
}
