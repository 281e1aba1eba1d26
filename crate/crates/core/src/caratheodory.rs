//! Functions of positive real part with `p(0) = 1`, generated from finite
//! Herglotz measures `p(z) = sum_i w_i (1 + e^{i t_i} z) / (1 - e^{i t_i} z)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::distr::{Distribution, Open01};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::GapReport;
use crate::seed::rng_from_seed;
use crate::series::TruncatedSeries;

/// Allowed deviation of the total mass from 1.
pub const MASS_TOL: f64 = 1e-12;

/// A finite atomic probability measure on the unit circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure")]
pub struct HerglotzMeasure {
    atoms: Vec<f64>,
    weights: Vec<f64>,
}

#[derive(Deserialize)]
struct RawMeasure {
    atoms: Vec<f64>,
    weights: Vec<f64>,
}

impl TryFrom<RawMeasure> for HerglotzMeasure {
    type Error = Error;

    fn try_from(raw: RawMeasure) -> Result<Self> {
        HerglotzMeasure::new(raw.atoms, raw.weights)
    }
}

impl HerglotzMeasure {
    /// `atoms` are angles in radians; each is reduced into `[0, 2 pi)`.
    pub fn new(atoms: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        if atoms.len() != weights.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} atoms but {} weights",
                atoms.len(),
                weights.len()
            )));
        }
        if let Some(t) = atoms.iter().find(|t| !t.is_finite()) {
            return Err(Error::InvalidMeasure(format!("angle {t} is not finite")));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidMeasure(format!("weight {w} is not strictly positive")));
        }
        let mass: f64 = weights.iter().sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidMeasure(format!("total mass {mass} differs from 1")));
        }
        let atoms = atoms.into_iter().map(|t| t.rem_euclid(TAU)).collect();
        Ok(Self { atoms, weights })
    }

    /// A unit point mass at angle `t`.
    pub fn point(t: f64) -> Result<Self> {
        Self::new(vec![t], vec![1.0])
    }

    /// `count` equally spaced atoms of equal weight, the first at angle 0.
    pub fn equally_spaced(count: usize) -> Result<Self> {
        let atoms = (0..count).map(|i| TAU * i as f64 / count as f64).collect();
        Self::new(atoms, vec![1.0 / count as f64; count])
    }

    /// `theta * self + (1 - theta) * other`, for `0 < theta < 1`.
    pub fn blend(&self, other: &Self, theta: f64) -> Result<Self> {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        let mut weights: Vec<f64> = self.weights.iter().map(|w| w * theta).collect();
        weights.extend(other.weights.iter().map(|w| w * (1.0 - theta)));
        Self::new(atoms, weights)
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Coefficients `p_0 = 1`, `p_j = 2 sum_i w_i e^{i j t_i}`.
pub fn p_from_measure(measure: &HerglotzMeasure, order: usize) -> Result<TruncatedSeries> {
    if order < 1 {
        return Err(Error::OrderTooSmall(order));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Complex64::new(1.0, 0.0));
    for j in 1..=order {
        let sum: Complex64 = measure
            .atoms
            .iter()
            .zip(&measure.weights)
            .map(|(&t, &w)| Complex64::cis(j as f64 * t) * w)
            .sum();
        coeffs.push(sum * 2.0);
    }
    TruncatedSeries::new(coeffs)
}

/// Deterministic random measure with between 1 and `max_atoms` atoms, uniform
/// angles, and weights that are normalized exponential variates.
pub fn random_measure(seed: u64, max_atoms: usize) -> Result<HerglotzMeasure> {
    if max_atoms == 0 {
        return Err(Error::InvalidMeasure("max_atoms must be at least 1".into()));
    }
    let mut rng = rng_from_seed(seed);
    let count = rng.random_range(1..=max_atoms);
    let atoms: Vec<f64> = (0..count).map(|_| rng.random::<f64>() * TAU).collect();
    let raw: Vec<f64> = (0..count)
        .map(|_| {
            let u: f64 = Open01.sample(&mut rng);
            -u.ln()
        })
        .collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    // push the rounding residue into the largest weight
    let residue = 1.0 - weights.iter().sum::<f64>();
    if let Some(max) = weights.iter_mut().max_by(|a, b| a.total_cmp(b)) {
        *max += residue;
    }
    HerglotzMeasure::new(atoms, weights)
}

/// `|p_j| <= 2` for `1 <= j <= max_j` (clamped to the order).
pub fn check_caratheodory_bound(p: &TruncatedSeries, max_j: usize, tolerance: f64) -> Result<Vec<GapReport>> {
    p.expect_constant(1.0)?;
    let top = max_j.min(p.order());
    Ok((1..=top)
        .map(|j| GapReport::new("caratheodory_bound", j, p.coeff(j).norm(), 2.0, tolerance))
        .collect())
}

/// Polar sampling grid `r = radius * s / radial` (`s = 1..=radial`),
/// `theta = 2 pi t / angular` (`t = 0..angular`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskGrid {
    pub radius: f64,
    pub radial: usize,
    pub angular: usize,
}

impl Default for DiskGrid {
    fn default() -> Self {
        Self {
            radius: 0.9,
            radial: 64,
            angular: 256,
        }
    }
}

impl DiskGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius < 1.0) {
            return Err(Error::InvalidGrid(format!("radius {} not in (0, 1)", self.radius)));
        }
        if self.radial == 0 || self.angular == 0 {
            return Err(Error::InvalidGrid(
                "grid needs at least one radial and one angular step".into(),
            ));
        }
        Ok(())
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (1..=self.radial).flat_map(move |s| {
            let r = self.radius * s as f64 / self.radial as f64;
            (0..self.angular).map(move |t| Complex64::from_polar(r, TAU * t as f64 / self.angular as f64))
        })
    }
}

/// Smallest `Re p(z)` over the grid.
pub fn min_real_part(p: &TruncatedSeries, grid: &DiskGrid) -> Result<f64> {
    grid.validate()?;
    Ok(grid.points().map(|z| p.evaluate(z).re).fold(f64::INFINITY, f64::min))
}
