use std::fs;
use std::path::Path;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use xi_counter_core::counting::{
    self, bound_report, bound_sweep_range, lehmer_analysis, perturbation_scan,
    perturbation_scan_split, summarize, Sampler, ZeroCounter,
};
use xi_counter_core::dataio::{
    emit_plot_script, format_sig12, load_zeros, parse_field, CsvRecord, PlotKind,
};
use xi_counter_core::locus::{
    classify_intersections, flatten, trace_locus, trace_locus_split, LocusFunction, LocusGrid,
};
use xi_counter_core::{rs_core, special_fn, Error, Result};

use crate::args::{Cli, Command, Mode, Which};

/// Rows and plot layout produced by one command.
pub struct Output {
    pub csv: Option<Vec<u8>>,
    pub plot: Option<PlotKind>,
    /// A numerical check inside the command failed.
    pub inconsistent: bool,
}

impl Output {
    fn rows<R: CsvRecord>(rows: &[R], plot: Option<PlotKind>) -> Result<Self> {
        Ok(Self {
            csv: Some(xi_counter_core::dataio::csv_bytes(rows)?),
            plot,
            inconsistent: false,
        })
    }
}

pub fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Eval { t, eps, order } => eval(*t, *eps, *order),
        Command::Theta { t } => theta(*t),
        Command::Count { t, order } => count(*t, *order),
        Command::Bound {
            t_max,
            t_min,
            mode,
            delta,
            zeros,
        } => bound(*t_min, *t_max, *mode, *delta, zeros),
        Command::Perturb {
            t_lo,
            t_hi,
            step,
            split,
        } => perturb(*t_lo, *t_hi, *step, *split),
        Command::Lehmer { center, halfwidth } => lehmer(*center, *halfwidth),
        Command::Locus {
            t_lo,
            t_hi,
            eps_hi,
            nt,
            neps,
            which,
            order,
            tol,
            split,
        } => {
            let which = match which {
                Which::Z => LocusFunction::Z,
                Which::Zstar => LocusFunction::ZStar,
            };
            // Z* is defined without remainder; Z defaults to the full order.
            let m = order.unwrap_or(if which == LocusFunction::Z { 2 } else { 0 });
            let grid = LocusGrid::new((*t_lo, *t_hi), *eps_hi, *nt, *neps, which, m);
            let grid = match grid {
                Err(Error::SplitRequired { .. }) if *split => LocusGrid {
                    t_lo: *t_lo,
                    t_hi: *t_hi,
                    eps_hi: *eps_hi,
                    nt: *nt,
                    neps: *neps,
                    which,
                    order_m: m,
                },
                other => other?,
            };
            locus(&grid, *tol, *split)
        }
        Command::Compare {
            zeros,
            t_max,
            samples,
            order,
        } => compare(zeros, *t_max, *samples, *order, cli.seed),
        Command::Replay { .. } => unreachable!("replay is resolved before execution"),
    }
}

struct EvalRow {
    t: f64,
    eps: f64,
    order: usize,
    n: u64,
    p: f64,
    omega: f64,
    re: f64,
    im: f64,
    err_bound: f64,
}

impl CsvRecord for EvalRow {
    fn header() -> &'static [&'static str] {
        &["t", "eps", "order", "N", "p", "omega", "re", "im", "err_bound"]
    }
    fn to_fields(&self) -> Vec<String> {
        vec![
            format_sig12(self.t),
            format_sig12(self.eps),
            self.order.to_string(),
            self.n.to_string(),
            format_sig12(self.p),
            format_sig12(self.omega),
            format_sig12(self.re),
            format_sig12(self.im),
            format_sig12(self.err_bound),
        ]
    }
    fn from_fields(f: &[&str]) -> Result<Self> {
        Ok(Self {
            t: parse_field(f, 0, "t")?,
            eps: parse_field(f, 1, "eps")?,
            order: parse_field(f, 2, "order")?,
            n: parse_field(f, 3, "N")?,
            p: parse_field(f, 4, "p")?,
            omega: parse_field(f, 5, "omega")?,
            re: parse_field(f, 6, "re")?,
            im: parse_field(f, 7, "im")?,
            err_bound: parse_field(f, 8, "err_bound")?,
        })
    }
}

fn eval(t: f64, eps: f64, order: usize) -> Result<Output> {
    let z = rs_core::z(t, eps, order)?;
    println!("t={}", format_sig12(t));
    println!("eps={}", format_sig12(eps));
    println!("M={order}");
    println!("N={} p={} omega={}", z.params.n, format_sig12(z.params.p), format_sig12(z.params.omega));
    println!("Z={} {:+}i", format_sig12(z.value.re), format_sig12(z.value.im));
    println!("err_bound={}", format_sig12(z.err_bound));
    Output::rows(
        &[EvalRow {
            t,
            eps,
            order,
            n: z.params.n,
            p: z.params.p,
            omega: z.params.omega,
            re: z.value.re,
            im: z.value.im,
            err_bound: z.err_bound,
        }],
        None,
    )
}

struct ThetaRow {
    t: f64,
    theta: f64,
}

impl CsvRecord for ThetaRow {
    fn header() -> &'static [&'static str] {
        &["t", "theta"]
    }
    fn to_fields(&self) -> Vec<String> {
        vec![format_sig12(self.t), format_sig12(self.theta)]
    }
    fn from_fields(f: &[&str]) -> Result<Self> {
        Ok(Self {
            t: parse_field(f, 0, "t")?,
            theta: parse_field(f, 1, "theta")?,
        })
    }
}

fn theta(t: f64) -> Result<Output> {
    let th = special_fn::theta(t)?;
    println!("theta({})={}", format_sig12(t), format_sig12(th));
    Output::rows(&[ThetaRow { t, theta: th }], None)
}

fn count(t: f64, order: usize) -> Result<Output> {
    let r = counting::count_zeros(t, order)?;
    println!("T={}", format_sig12(t));
    println!("N={}", r.n);
    println!("phase_gamma={}", format_sig12(r.phase_gamma));
    println!("phase_zeta={}", format_sig12(r.phase_zeta));
    println!("phase_Z={}", format_sig12(r.phase_z));
    println!("residual={}", format_sig12(r.residual));
    let b = bound_report(t, r.n)?;
    println!("deviation_78={}", format_sig12(b.deviation_78));
    Output::rows(&[r], Some(PlotKind::Staircase))
}

fn bound(t_min: f64, t_max: f64, mode: Mode, delta: f64, zeros: &Path) -> Result<Output> {
    let table = load_zeros(zeros)?;
    // N(T) is read off the table, so it has to start at the first zero
    table.check_canonical()?;
    let sampler = match mode {
        Mode::Gaps => Sampler::AtZeroGaps,
        Mode::Uniform => Sampler::Uniform(delta),
    };
    let reports = bound_sweep_range(&table, t_min, t_max, sampler)?;
    let s = summarize(&reports);
    println!("samples={}", s.samples);
    if s.samples > 0 {
        println!("min_deviation_78={}", format_sig12(s.min_deviation_78));
        println!("max_deviation_78={}", format_sig12(s.max_deviation_78));
        println!(
            "max_abs_deviation_78={} at T={}",
            format_sig12(s.max_abs_deviation_78),
            format_sig12(s.argmax_abs_deviation_78)
        );
        println!("max_abs_deviation_38={}", format_sig12(s.max_abs_deviation_38));
        println!("min_backlund_margin={}", format_sig12(s.min_backlund_margin));
    }
    println!("all refined_ok_25={}", s.all_refined_ok_25);
    println!("all refined_ok_3={}", s.all_refined_ok_3);
    Output::rows(&reports, Some(PlotKind::Deviation))
}

fn perturb(t_lo: f64, t_hi: f64, step: f64, split: bool) -> Result<Output> {
    let r = if split {
        perturbation_scan_split(t_lo, t_hi, step)?
    } else {
        perturbation_scan(t_lo, t_hi, step)?
    };
    println!("samples={}", r.samples.len());
    println!("jumps={}", r.jumps.len());
    for j in &r.jumps {
        println!(
            "  t={} jump={} ({} pi)",
            format_sig12(j.t),
            format_sig12(j.jump),
            (j.jump / std::f64::consts::PI).round()
        );
    }
    Output::rows(&r.jumps, None)
}

struct LehmerRow {
    center: f64,
    halfwidth: f64,
    class: String,
    min_abs_z_star: f64,
}

impl CsvRecord for LehmerRow {
    fn header() -> &'static [&'static str] {
        &["center", "halfwidth", "class", "min_abs_Zstar"]
    }
    fn to_fields(&self) -> Vec<String> {
        vec![
            format_sig12(self.center),
            format_sig12(self.halfwidth),
            self.class.clone(),
            format_sig12(self.min_abs_z_star),
        ]
    }
    fn from_fields(f: &[&str]) -> Result<Self> {
        Ok(Self {
            center: parse_field(f, 0, "center")?,
            halfwidth: parse_field(f, 1, "halfwidth")?,
            class: parse_field(f, 2, "class")?,
            min_abs_z_star: parse_field(f, 3, "min_abs_Zstar")?,
        })
    }
}

fn lehmer(center: f64, halfwidth: f64) -> Result<Output> {
    let r = lehmer_analysis(center, halfwidth)?;
    let class = match r.class {
        counting::LehmerClass::OnLinePair => "on_line_pair",
        counting::LehmerClass::OffLinePair => "off_line_pair",
    };
    println!("class={class}");
    println!("Z_sign_changes={}", r.z_sign_changes);
    println!("Zstar_sign_changes={}", r.z_star_sign_changes);
    println!("min_abs_Zstar={}", format_sig12(r.min_abs_z_star));
    if let Some(g) = r.phase_gain {
        println!("Zstar_phase_gain={}", format_sig12(g));
    }
    Output::rows(
        &[LehmerRow {
            center,
            halfwidth,
            class: class.into(),
            min_abs_z_star: r.min_abs_z_star,
        }],
        None,
    )
}

fn locus(grid: &LocusGrid, tol: f64, split: bool) -> Result<Output> {
    let curves = if split {
        trace_locus_split(grid)?
    } else {
        trace_locus(grid)?
    };
    let zeros = classify_intersections(&curves, tol)?;
    println!("curves={}", curves.len());
    println!("intersections={}", zeros.len());
    for z in &zeros {
        println!(
            "  t={} eps={} {:?}",
            format_sig12(z.ordinate),
            format_sig12(z.eps),
            z.classification
        );
    }
    Output::rows(&flatten(&curves), Some(PlotKind::Locus))
}

struct CompareRow {
    t: f64,
    n_phase: u64,
    n_table: u64,
    residual: f64,
}

impl CsvRecord for CompareRow {
    fn header() -> &'static [&'static str] {
        &["T", "N_phase", "N_table", "residual"]
    }
    fn to_fields(&self) -> Vec<String> {
        vec![
            format_sig12(self.t),
            self.n_phase.to_string(),
            self.n_table.to_string(),
            format_sig12(self.residual),
        ]
    }
    fn from_fields(f: &[&str]) -> Result<Self> {
        Ok(Self {
            t: parse_field(f, 0, "T")?,
            n_phase: parse_field(f, 1, "N_phase")?,
            n_table: parse_field(f, 2, "N_table")?,
            residual: parse_field(f, 3, "residual")?,
        })
    }
}

fn compare(zeros: &Path, t_max: f64, samples: usize, order: usize, seed: u64) -> Result<Output> {
    let table = load_zeros(zeros)?;
    table.check_canonical()?;
    let mids: Vec<f64> = table
        .gap_midpoints()
        .filter(|&t| t > rs_core::T_MIN && t < t_max)
        .collect();
    if mids.is_empty() {
        return Err(Error::Precondition(format!(
            "no gap midpoints in (30, {t_max})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<f64> = sample(&mut rng, mids.len(), samples.min(mids.len()))
        .into_iter()
        .map(|i| mids[i])
        .collect();
    picked.sort_by(f64::total_cmp);
    let results = ZeroCounter::shared().count_many(&picked, order);
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for (t, r) in picked.iter().zip(results) {
        let r = r?;
        let n_table = table.count_below(*t) as u64;
        if r.n != n_table {
            mismatches += 1;
        }
        println!(
            "T={} N_phase={} N_table={} residual={}{}",
            format_sig12(*t),
            r.n,
            n_table,
            format_sig12(r.residual),
            if r.n == n_table { "" } else { "  MISMATCH" }
        );
        rows.push(CompareRow {
            t: *t,
            n_phase: r.n,
            n_table,
            residual: r.residual,
        });
    }
    println!("mismatches={mismatches}");
    let mut out = Output::rows(&rows, None)?;
    out.inconsistent = mismatches > 0;
    Ok(out)
}

pub fn write_outputs(cli: &Cli, out: &Output) -> Result<()> {
    if let (Some(path), Some(bytes)) = (&cli.csv, &out.csv) {
        fs::write(path, bytes).map_err(|e| Error::Io {
            path: path.clone(),
            source: e,
        })?;
    }
    if let Some(plot) = &cli.plot {
        let csv = cli
            .csv
            .as_ref()
            .ok_or_else(|| Error::Precondition("--plot needs --csv".into()))?;
        let kind = out
            .plot
            .ok_or_else(|| Error::Precondition("this command has no plot layout".into()))?;
        let script = emit_plot_script(csv, kind)?;
        fs::write(plot, script).map_err(|e| Error::Io {
            path: plot.clone(),
            source: e,
        })?;
    }
    Ok(())
}
