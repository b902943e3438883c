#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use xi_counter_core::dataio::load_zeros;
use xi_counter_core::ZeroTable;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

/// The first 10^5 zero ordinates, loaded once per test binary.
pub fn zeros() -> &'static ZeroTable {
    static TABLE: OnceLock<ZeroTable> = OnceLock::new();
    TABLE.get_or_init(|| load_zeros(data_path("zeros_100k.txt")).expect("zero table"))
}

/// Frozen high-precision values: `(name, numbers)` per line.
pub fn oracles(name: &str) -> Vec<Vec<f64>> {
    static TEXT: OnceLock<String> = OnceLock::new();
    let text = TEXT.get_or_init(|| {
        std::fs::read_to_string(data_path("oracles.txt")).expect("oracle file")
    });
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            (it.next()? == name).then(|| it.map(|x| x.parse().unwrap()).collect())
        })
        .collect()
}

/// Gap midpoints in `(lo, hi)`.
pub fn midpoints(lo: f64, hi: f64) -> Vec<f64> {
    zeros()
        .gap_midpoints()
        .filter(|&t| t > lo && t < hi)
        .collect()
}
