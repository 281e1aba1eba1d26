//! The Salagean differential operator `D^n` and its inverse `I_n`.
//!
//! `D f = z f'` multiplies the coefficient of `z^k` by `k`, so `D^n` is the
//! coefficientwise map `a_k -> k^n a_k` and `I_n` is `a_k -> a_k / k^n`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::series::TruncatedSeries;

/// Order `n` of the class `S_n` (`0` starlike, `1` convex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SalageanOrder(pub u32);

impl SalageanOrder {
    pub const STARLIKE: SalageanOrder = SalageanOrder(0);
    pub const CONVEX: SalageanOrder = SalageanOrder(1);

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn next(self) -> Self {
        SalageanOrder(self.0 + 1)
    }

    /// `k^n` by repeated multiplication, exact while the result fits in 53 bits.
    pub fn weight(self, k: usize) -> f64 {
        int_pow(k as f64, self.0)
    }
}

impl fmt::Display for SalageanOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for SalageanOrder {
    fn from(n: u32) -> Self {
        SalageanOrder(n)
    }
}

pub(crate) fn int_pow(base: f64, exp: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

fn scale_by_index(f: &TruncatedSeries, n: SalageanOrder, divide: bool) -> Result<TruncatedSeries> {
    f.expect_normalized()?;
    let coeffs: Vec<Complex64> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            if k == 0 {
                a
            } else if divide {
                a / n.weight(k)
            } else {
                a * n.weight(k)
            }
        })
        .collect();
    TruncatedSeries::new(coeffs)
}

/// `D^n f`. Requires a normalized `f`.
pub fn apply_d(f: &TruncatedSeries, n: SalageanOrder) -> Result<TruncatedSeries> {
    scale_by_index(f, n, false)
}

/// `I_n f`. Requires a normalized `f`.
pub fn apply_i(f: &TruncatedSeries, n: SalageanOrder) -> Result<TruncatedSeries> {
    scale_by_index(f, n, true)
}
