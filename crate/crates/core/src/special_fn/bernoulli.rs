//! Even-index Bernoulli numbers as exact rationals.

use std::sync::OnceLock;

use num_rational::{Ratio, Rational64};

use crate::error::{Error, Result};

/// Largest index served; enough for Stirling and Euler-Maclaurin orders up to 10.
pub const MAX_INDEX: usize = 20;

/// B_2, B_4, ..., B_20. Odd-index entries beyond B_1 are zero and not stored.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<Rational64>,
    floats: Vec<f64>,
}

impl BernoulliTable {
    fn build() -> Self {
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
        let mut b: Vec<Ratio<i128>> = Vec::with_capacity(MAX_INDEX + 1);
        b.push(Ratio::from_integer(1));
        for m in 1..=MAX_INDEX {
            let mut acc = Ratio::from_integer(0);
            let mut binom: i128 = 1; // C(m+1, 0)
            for (j, bj) in b.iter().enumerate() {
                acc += *bj * binom;
                binom = binom * (m as i128 + 1 - j as i128) / (j as i128 + 1);
            }
            b.push(-acc / (m as i128 + 1));
        }
        let values: Vec<Rational64> = (2..=MAX_INDEX)
            .step_by(2)
            .map(|k| {
                let r = &b[k];
                Rational64::new(
                    i64::try_from(*r.numer()).expect("B_k numerator fits i64"),
                    i64::try_from(*r.denom()).expect("B_k denominator fits i64"),
                )
            })
            .collect();
        let floats = values
            .iter()
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
            .collect();
        Self { values, floats }
    }

    /// The shared table, built on first use.
    pub fn get() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(Self::build)
    }

    /// `B_k` for even `2 <= k <= MAX_INDEX`.
    pub fn value(&self, k: usize) -> Result<Rational64> {
        check_index(k)?;
        Ok(self.values[k / 2 - 1])
    }

    pub(crate) fn value_f64(&self, k: usize) -> f64 {
        self.floats[k / 2 - 1]
    }

    /// Stored entries, B_2 first.
    pub fn values(&self) -> &[Rational64] {
        &self.values
    }
}

fn check_index(k: usize) -> Result<()> {
    if k == 0 || k % 2 == 1 || k > MAX_INDEX {
        return Err(Error::Domain(format!(
            "Bernoulli index must be even in [2, {MAX_INDEX}], got {k}"
        )));
    }
    Ok(())
}

/// Exact Bernoulli number `B_k` (even `k`, `2 <= k <= 20`).
pub fn bernoulli(k: usize) -> Result<Rational64> {
    BernoulliTable::get().value(k)
}
