use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "xi-counter",
    version,
    about = "Extended Riemann-Siegel evaluation, zero counting and bound checks"
)]
pub struct Cli {
    /// Write the result records to this CSV file.
    #[arg(long, global = true, value_name = "FILE")]
    pub csv: Option<PathBuf>,

    /// Write a gnuplot script for the CSV (requires --csv).
    #[arg(long, global = true, value_name = "FILE")]
    pub plot: Option<PathBuf>,

    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "XI_COUNTER_JOBS")]
    pub jobs: Option<usize>,

    /// Seed for commands that sample at random.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Where to write the run configuration (default: next to --csv, else stderr).
    #[arg(long, global = true, value_name = "FILE")]
    pub config_out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Gaps,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Z,
    Zstar,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate Z(t, eps) with remainder order M.
    Eval {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Riemann-Siegel theta(t).
    Theta {
        #[arg(long)]
        t: f64,
    },
    /// Count zeros below T by contour phase tracking.
    Count {
        #[arg(long = "T")]
        t: f64,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Refined and classical bound checks over a sweep.
    Bound {
        #[arg(long = "T-max")]
        t_max: f64,
        #[arg(long = "T-min", default_value_t = 10.0)]
        t_min: f64,
        #[arg(long, value_enum, default_value_t = Mode::Gaps)]
        mode: Mode,
        #[arg(long, default_value_t = 0.027)]
        delta: f64,
        #[arg(long, value_name = "FILE")]
        zeros: PathBuf,
    },
    /// Look for off-line zeros of Z* (phase jumps of 2 pi).
    Perturb {
        #[arg(long = "t-lo")]
        t_lo: f64,
        #[arg(long = "t-hi")]
        t_hi: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        /// Split the range at t = 2 pi N^2 instead of refusing it.
        #[arg(long)]
        split: bool,
    },
    /// Classify the Z* behaviour at a close zero pair.
    Lehmer {
        #[arg(long)]
        center: f64,
        #[arg(long, default_value_t = 0.25)]
        halfwidth: f64,
    },
    /// Trace Re = 0 and Im = 0 curves and classify their crossings.
    Locus {
        #[arg(long = "t-lo")]
        t_lo: f64,
        #[arg(long = "t-hi")]
        t_hi: f64,
        #[arg(long = "eps-hi", default_value_t = 1.0)]
        eps_hi: f64,
        #[arg(long, default_value_t = 201)]
        nt: usize,
        #[arg(long, default_value_t = 33)]
        neps: usize,
        #[arg(long, value_enum, default_value_t = Which::Z)]
        which: Which,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
        /// Split the grid at t = 2 pi N^2 (needed for zstar across a boundary).
        #[arg(long)]
        split: bool,
    },
    /// Compare phase counts with an ingested table at random gap midpoints.
    Compare {
        #[arg(long, value_name = "FILE")]
        zeros: PathBuf,
        #[arg(long = "T-max")]
        t_max: f64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Re-run a stored run configuration.
    Replay {
        config: PathBuf,
    },
}
