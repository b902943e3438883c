mod common;

use xi_counter_core::counting::{Classification, ZeroRecord};
use xi_counter_core::locus::*;
use xi_counter_core::Error;

// Built directly: Z* rectangles that cross 2 pi N^2 only validate piecewise.
fn grid(which: LocusFunction, lo: f64, hi: f64, nt: usize) -> LocusGrid {
    LocusGrid {
        t_lo: lo,
        t_hi: hi,
        eps_hi: 1.0,
        nt,
        neps: 33,
        which,
        order_m: 2,
    }
}

fn zeros_of(which: LocusFunction, lo: f64, hi: f64, nt: usize) -> (Vec<LocusCurve>, Vec<ZeroRecord>) {
    let grid = grid(which, lo, hi, nt);
    let curves = trace_locus_split(&grid).unwrap();
    let recs = classify_intersections(&curves, DEFAULT_TOL).unwrap();
    (curves, recs)
}

fn on_line_matches_table(recs: &[ZeroRecord], lo: f64, hi: f64, tol: f64) {
    let table = common::zeros();
    let on: Vec<f64> = recs
        .iter()
        .filter(|r| r.classification == Classification::OnLine)
        .map(|r| r.ordinate)
        .collect();
    assert_eq!(on.len(), table.count_below(hi) - table.count_below(lo), "{on:?}");
    for t in on {
        let d = table.distance_to_nearest(t);
        assert!(d < tol, "{t}: {d:e}");
    }
}

#[test]
fn z_window_at_221_is_all_on_line() {
    let (curves, recs) = zeros_of(LocusFunction::Z, 210.0, 230.0, 201);
    assert!(recs.iter().all(|r| r.classification == Classification::OnLine));
    on_line_matches_table(&recs, 210.0, 230.0, 3e-4);
    // the two zeros of the close pair show up as two separate axis crossings
    let near = recs.iter().filter(|r| (r.ordinate - 221.07).abs() < 0.5).count();
    assert_eq!(near, 2);
    // everything except the exact axis segment was bisected onto the zero set
    assert!(curves.iter().filter(|c| c.points.iter().any(|p| p.1 > 0.0)).all(|c| c.refined));
}

#[test]
fn im_zero_curves_contain_the_axis() {
    let (curves, _) = zeros_of(LocusFunction::Z, 95.0, 105.0, 101);
    let axis = curves
        .iter()
        .filter(|c| c.kind == CurveKind::ImZero)
        .any(|c| c.points.iter().all(|p| p.1 == 0.0) && c.points.len() >= 2);
    assert!(axis);
}

#[test]
fn z_near_100_matches_ordinates() {
    let (_, recs) = zeros_of(LocusFunction::Z, 95.0, 105.0, 101);
    assert!(recs.iter().all(|r| r.classification == Classification::OnLine));
    on_line_matches_table(&recs, 95.0, 105.0, 3e-4);
}

#[test]
fn z_has_no_off_line_zeros_up_to_5000() {
    for lo in [1000.0, 2500.0, 4990.0] {
        let (_, recs) = zeros_of(LocusFunction::Z, lo, lo + 10.0, 201);
        assert!(recs.iter().all(|r| r.classification == Classification::OnLine), "{lo}");
        on_line_matches_table(&recs, lo, lo + 10.0, 1e-4);
    }
}

#[test]
fn z_star_has_an_off_line_zero_near_221() {
    let (_, recs) = zeros_of(LocusFunction::ZStar, 210.0, 230.0, 201);
    let off: Vec<_> = recs
        .iter()
        .filter(|r| r.classification == Classification::OffLine)
        .collect();
    assert_eq!(off.len(), 1, "{off:?}");
    assert!(off[0].eps > 0.05);
    assert!((off[0].ordinate - 221.079).abs() < 1e-3);
}

#[test]
fn intersections_are_stable_under_doubling() {
    let grid = grid(LocusFunction::ZStar, 210.0, 230.0, 201);
    let coarse = classify_intersections(&trace_locus_split(&grid).unwrap(), DEFAULT_TOL).unwrap();
    let fine = classify_intersections(&trace_locus_split(&grid.doubled()).unwrap(), DEFAULT_TOL).unwrap();
    assert_eq!(coarse.len(), fine.len());
    for (a, b) in coarse.iter().zip(&fine) {
        assert!((a.ordinate - b.ordinate).abs() < 1e-4);
        assert!((a.eps - b.eps).abs() < 1e-4);
    }
}

#[test]
fn z_star_grid_must_be_split() {
    let grid = LocusGrid {
        t_lo: 210.0,
        t_hi: 230.0,
        eps_hi: 1.0,
        nt: 64,
        neps: 16,
        which: LocusFunction::ZStar,
        order_m: 0,
    };
    assert!(matches!(trace_locus(&grid), Err(Error::SplitRequired { .. })));
    let pieces = grid.split();
    assert_eq!(pieces.len(), 2);
    assert!(pieces.iter().all(|g| g.validate().is_ok()));
}

#[test]
fn grid_validation() {
    assert!(LocusGrid::new((20.0, 40.0), 1.0, 32, 32, LocusFunction::Z, 2).is_err());
    assert!(LocusGrid::new((40.0, 50.0), 1.6, 32, 32, LocusFunction::Z, 2).is_err());
    assert!(LocusGrid::new((40.0, 50.0), 1.0, 8, 32, LocusFunction::Z, 2).is_err());
    assert!(LocusGrid::new((40.0, 50.0), 1.5, 16, 16, LocusFunction::Z, 2).is_ok());
}

#[test]
fn empty_curves_give_no_zeros() {
    assert!(classify_intersections(&[], DEFAULT_TOL).unwrap().is_empty());
}

#[test]
fn flattened_points_keep_curve_labels() {
    let (curves, _) = zeros_of(LocusFunction::Z, 95.0, 105.0, 41);
    let pts = flatten(&curves);
    assert_eq!(pts.len(), curves.iter().map(|c| c.points.len()).sum::<usize>());
    assert!(pts.iter().all(|p| p.kind == "re_zero" || p.kind == "im_zero"));
}
