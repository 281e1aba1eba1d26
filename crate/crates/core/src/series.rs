//! Truncated complex power series.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_0, ..., c_N` and stands for the
//! polynomial `sum c_k z^k`. Products drop every power above the larger of the
//! two input orders.

use std::ops::{Add, Mul};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::unit::UnitModulus;

/// Default truncation order used by library helpers and the CLI.
pub const DEFAULT_ORDER: usize = 32;

/// Tolerance for normalization checks (`c_0 = 0`, `c_1 = 1`, `p_0 = 1`, ...).
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries", into = "RawSeries")]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawSeries {
    order: usize,
    coeffs: Vec<Complex64>,
}

impl TryFrom<RawSeries> for TruncatedSeries {
    type Error = Error;

    fn try_from(raw: RawSeries) -> Result<Self> {
        if raw.coeffs.len() != raw.order + 1 {
            return Err(Error::CoefficientCount {
                order: raw.order,
                expected: raw.order + 1,
                found: raw.coeffs.len(),
            });
        }
        TruncatedSeries::new(raw.coeffs)
    }
}

impl From<TruncatedSeries> for RawSeries {
    fn from(s: TruncatedSeries) -> Self {
        RawSeries {
            order: s.order(),
            coeffs: s.coeffs,
        }
    }
}

impl TruncatedSeries {
    /// Builds a series of order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::OrderTooSmall(coeffs.len().saturating_sub(1)));
        }
        if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Internal constructor for arithmetic results whose finiteness follows from the inputs.
    pub(crate) fn from_vec_unchecked(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(coeffs.len() >= 2);
        Self { coeffs }
    }

    pub fn zeros(order: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); order + 1])
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Result<Self> {
        let mut s = Self::zeros(order)?;
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// The identity function `z`.
    pub fn identity(order: usize) -> Result<Self> {
        let mut s = Self::zeros(order)?;
        s.coeffs[1] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// `sum_k eta^k z^k`, the expansion of `1 / (1 - eta z)`.
    pub fn geometric(eta: Complex64, order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::OrderTooSmall(order));
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut power = Complex64::new(1.0, 0.0);
        for _ in 0..=order {
            coeffs.push(power);
            power *= eta;
        }
        Self::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^k`; zero above the order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Zero-pads or truncates to `order`.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self::new(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().max(other.order());
        let coeffs = (0..=order).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::from_vec_unchecked(coeffs)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_vec_unchecked(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Cauchy product truncated at the larger input order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().max(other.order());
        let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_vec_unchecked(out)
    }

    /// Multiplies by `z`, keeping the order (the top coefficient is dropped).
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self::from_vec_unchecked(coeffs)
    }

    /// `exp(phi)` for `phi(0) = 0` via `k beta_k = sum_{j=1}^k j lambda_j beta_{k-j}`.
    pub fn exp(&self) -> Result<Self> {
        self.expect_constant(0.0)?;
        let order = self.order();
        let mut beta = vec![Complex64::new(0.0, 0.0); order + 1];
        beta[0] = Complex64::new(1.0, 0.0);
        for k in 1..=order {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.coeffs[j] * beta[k - j] * j as f64;
            }
            beta[k] = acc / k as f64;
        }
        Self::new(beta)
    }

    /// Inverse of [`exp`](Self::exp) for series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        self.expect_constant(1.0)?;
        let order = self.order();
        let beta = &self.coeffs;
        let mut lambda = vec![Complex64::new(0.0, 0.0); order + 1];
        for k in 1..=order {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..k {
                acc += lambda[j] * beta[k - j] * j as f64;
            }
            lambda[k] = beta[k] - acc / k as f64;
        }
        Self::new(lambda)
    }

    /// `1 / f` for `f(0) != 0`, by `inv_k = -(1/c_0) sum_{j=1}^k c_j inv_{k-j}`.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() <= NORM_TOL {
            return Err(Error::ConstantTerm {
                expected: 1.0,
                found: c0,
            });
        }
        let order = self.order();
        let mut inv = vec![Complex64::new(0.0, 0.0); order + 1];
        inv[0] = c0.inv();
        for k in 1..=order {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.coeffs[j] * inv[k - j];
            }
            inv[k] = -acc * inv[0];
        }
        Self::new(inv)
    }

    /// Horner evaluation of the retained polynomial.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// The rotation `conj(omega) f(omega z)`: `a_k -> omega^{k-1} a_k`.
    pub fn rotate(&self, omega: UnitModulus) -> Result<Self> {
        self.expect_normalized()?;
        let w = omega.value();
        let mut power = Complex64::new(1.0, 0.0);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(self.coeffs[0]);
        for &c in &self.coeffs[1..] {
            coeffs.push(c * power);
            power *= w;
        }
        Self::new(coeffs)
    }

    /// Largest coefficientwise distance, treating missing coefficients as zero.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let order = self.order().max(other.order());
        (0..=order)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    pub fn expect_constant(&self, expected: f64) -> Result<()> {
        let found = self.coeffs[0];
        if (found - Complex64::new(expected, 0.0)).norm() > NORM_TOL {
            return Err(Error::ConstantTerm { expected, found });
        }
        Ok(())
    }

    /// Requires `c_0 = 0` and `c_1 = 1`.
    pub fn expect_normalized(&self) -> Result<()> {
        let (c0, c1) = (self.coeffs[0], self.coeffs[1]);
        if c0.norm() > NORM_TOL || (c1 - Complex64::new(1.0, 0.0)).norm() > NORM_TOL {
            return Err(Error::NotNormalized { c0, c1 });
        }
        Ok(())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}
