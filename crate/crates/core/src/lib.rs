//! Extended Riemann-Siegel evaluation off the critical line, zero counting by
//! contour phase tracking, and the experiments built on top of them.

// `!(x > a)` is used on purpose: it also rejects NaN arguments.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod counting;
pub mod dataio;
pub mod error;
pub mod locus;
pub mod numeric;
pub mod oracle;
pub mod phase;
pub mod rs_core;
pub mod special_fn;

pub use error::{Error, Result};

pub use counting::{
    BoundReport, Classification, CountResult, LehmerClass, Sampler, ZeroCounter, ZeroRecord,
    ZeroSource,
};
pub use dataio::{CsvRecord, PlotKind, ZeroTable};
pub use locus::{CurveKind, LocusCurve, LocusFunction, LocusGrid};
pub use phase::{Leg, Path, PhasePoint, PhaseTrace};
pub use rs_core::{RSParams, RSPoint, ZValue};
pub use special_fn::{BernoulliTable, GammaPhaseBreakdown, StirlingParams};
