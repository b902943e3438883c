use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the set an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// The argument sits outside the asymptotic range where a formula is valid.
    #[error("{what} = {value} is outside the supported range ({range})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Log-gamma evaluated on its branch cut.
    #[error("argument {re} + {im}i lies on the negative real axis (branch cut)")]
    Branch { re: f64, im: f64 },

    #[error("pole at s = 1")]
    Pole,

    /// A sampled value vanished exactly; the path needs to be moved.
    #[error("function vanished at parameter {at}; refine or move the path")]
    NeedsRefinement { at: f64 },

    /// Bisection hit the minimum step without resolving the phase increment.
    #[error(
        "phase ambiguous near parameter {at} (increment {increment:.3} rad at step {step:e}); \
         a zero likely lies on the path, retry with a nudged endpoint such as {suggestion}"
    )]
    Ambiguity {
        at: f64,
        increment: f64,
        step: f64,
        suggestion: f64,
    },

    /// Leg phases do not sum to a multiple of pi.
    #[error(
        "phase sum inconsistent at T = {t}: total/pi = {ratio:.6} \
         (gamma {gamma:.6}, zeta {zeta:.6}, Z {z:.6})"
    )]
    Inconsistency {
        t: f64,
        ratio: f64,
        gamma: f64,
        zeta: f64,
        z: f64,
    },

    /// A range or grid crosses t = 2 pi N^2 where Z* is discontinuous.
    #[error("interval [{lo}, {hi}] crosses the discontinuity t = 2*pi*{n}^2 = {at}; split it first")]
    SplitRequired { lo: f64, hi: f64, n: u64, at: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{path}:{line}: {message}")]
    Format {
        path: String,
        line: usize,
        message: String,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for the failures that signal a numerical problem rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NeedsRefinement { .. } | Error::Ambiguity { .. } | Error::Inconsistency { .. }
        )
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. } | Error::Csv(_))
    }
}
