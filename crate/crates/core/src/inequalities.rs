//! Checkers for the coefficient inequalities. Each returns the measured
//! quantity or a [`GapReport`] so the sweep can tabulate slack.
//!
//! The successive-coefficient bound `|(k+1)^n a_{k+1} - nu k^n a_k| <= 1` is read
//! as an existence statement over unimodular `nu`: the Koebe function with
//! `nu = -1` gives `|(k+1) + k| = 2k + 1`, so it cannot hold for every `nu`.
//! [`min_gap_over_circle`] tests the existence form; [`successive_gap`] reports
//! the gap at a caller-chosen `nu`.

use num_complex::Complex64;

use crate::classes::convolution_coefficients;
use crate::error::{Error, Result};
use crate::salagean::{int_pow, SalageanOrder};
use crate::series::{TruncatedSeries, NORM_TOL};
use crate::unit::UnitModulus;

pub use crate::report::GapReport;

/// Default slack tolerance for inequalities.
pub const DEFAULT_SLACK_TOL: f64 = 1e-6;
/// Default tolerance for algebraic identities.
pub const DEFAULT_IDENTITY_TOL: f64 = 1e-10;
/// Tolerance for the exponentiated-series coefficient bounds.
pub const LEBEDEV_MILIN_TOL: f64 = 1e-9;
/// Default number of points on the unit circle for `nu` searches.
pub const DEFAULT_CIRCLE_GRID: usize = 2048;

fn check_index(index: usize, min: usize, max: usize) -> Result<()> {
    if index < min || index > max {
        return Err(Error::IndexOutOfRange { index, min, max });
    }
    Ok(())
}

/// Minimizes `objective(theta)` for `theta` on a uniform grid of `grid` angles,
/// then polishes the best grid angle by golden-section search over the two
/// neighbouring grid cells.
///
/// Equality cases put the exact minimizer between grid points, and the residual
/// of the grid alone is of order `k^2 (pi / grid)^2`, which at `k = 12` and
/// 2048 points is about `4e-4`.
fn minimize_on_circle(grid: usize, objective: impl Fn(f64) -> f64) -> (UnitModulus, f64) {
    let step = std::f64::consts::TAU / grid as f64;
    let (mut best_t, mut best) = (0usize, f64::INFINITY);
    for t in 0..grid {
        let value = objective(step * t as f64);
        if value < best {
            (best_t, best) = (t, value);
        }
    }
    let center = step * best_t as f64;
    let (mut lo, mut hi) = (center - step, center + step);
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    for _ in 0..80 {
        if f1 <= f2 {
            hi = x2;
            (x2, f2) = (x1, f1);
            x1 = hi - ratio * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            (x1, f1) = (x2, f2);
            x2 = lo + ratio * (hi - lo);
            f2 = objective(x2);
        }
    }
    let (theta, value) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    if value < best {
        (UnitModulus::from_angle(theta).unwrap_or(UnitModulus::ONE), value)
    } else {
        (UnitModulus::root_of_unity(best_t, grid), best)
    }
}

/// `((k+1)^n a_{k+1}, k^n a_k)`.
fn weighted_pair(f: &TruncatedSeries, n: SalageanOrder, k: usize) -> Result<(Complex64, Complex64)> {
    f.expect_normalized()?;
    check_index(k, 1, f.order().saturating_sub(1))?;
    Ok((f.coeff(k + 1) * n.weight(k + 1), f.coeff(k) * n.weight(k)))
}

/// `|(k+1)^n a_{k+1} - nu k^n a_k|`, for `1 <= k <= N - 1`.
pub fn successive_gap(f: &TruncatedSeries, n: SalageanOrder, k: usize, nu: UnitModulus) -> Result<f64> {
    let (next, cur) = weighted_pair(f, n, k)?;
    Ok((next - nu.value() * cur).norm())
}

pub fn successive_gap_report(
    f: &TruncatedSeries,
    n: SalageanOrder,
    k: usize,
    nu: UnitModulus,
    tolerance: f64,
) -> Result<GapReport> {
    let gap = successive_gap(f, n, k, nu)?;
    Ok(GapReport::new("successive_gap", k, gap, 1.0, tolerance).with_witness(nu.value()))
}

/// Unimodular `nu*` minimizing the successive gap, found on a `grid`-point
/// circle and refined between grid points, with the minimum.
pub fn min_gap_over_circle(f: &TruncatedSeries, n: SalageanOrder, k: usize, grid: usize) -> Result<(UnitModulus, f64)> {
    if grid < 8 {
        return Err(Error::InvalidGrid(format!("circle grid {grid} is below 8 points")));
    }
    let (next, cur) = weighted_pair(f, n, k)?;
    Ok(minimize_on_circle(grid, |theta| {
        (next - Complex64::cis(theta) * cur).norm()
    }))
}

pub fn min_gap_report(
    f: &TruncatedSeries,
    n: SalageanOrder,
    k: usize,
    grid: usize,
    tolerance: f64,
) -> Result<GapReport> {
    let (nu, gap) = min_gap_over_circle(f, n, k, grid)?;
    Ok(GapReport::new("successive_gap_min", k, gap, 1.0, tolerance).with_witness(nu.value()))
}

/// `|(k+1)^n |a_{k+1}| - k^n |a_k|| <= 1`.
pub fn modulus_gap(f: &TruncatedSeries, n: SalageanOrder, k: usize, tolerance: f64) -> Result<GapReport> {
    let (next, cur) = weighted_pair(f, n, k)?;
    let lhs = (next.norm() - cur.norm()).abs();
    Ok(GapReport::new("modulus_gap", k, lhs, 1.0, tolerance))
}

/// `|a_k| <= k^{1-n}` for `2 <= k <= max_k` (clamped to the order).
pub fn coeff_bound(f: &TruncatedSeries, n: SalageanOrder, max_k: usize, tolerance: f64) -> Result<Vec<GapReport>> {
    f.expect_normalized()?;
    Ok((2..=max_k.min(f.order()))
        .map(|k| {
            let bound = k as f64 / n.weight(k);
            GapReport::new("coeff_bound", k, f.coeff(k).norm(), bound, tolerance)
        })
        .collect())
}

/// `|a_{2j+1}| <= (2j+1)^{-n}` for odd indices `3 <= 2j+1 <= max_k`. Reports carry the
/// coefficient index `2j+1` in `k`.
pub fn odd_coeff_bound(f: &TruncatedSeries, n: SalageanOrder, max_k: usize, tolerance: f64) -> Result<Vec<GapReport>> {
    f.expect_normalized()?;
    if let Some((index, c)) = f
        .coeffs()
        .iter()
        .enumerate()
        .step_by(2)
        .find(|(_, c)| c.norm() > NORM_TOL)
    {
        return Err(Error::NotOdd {
            index,
            modulus: c.norm(),
        });
    }
    Ok((3..=max_k.min(f.order()))
        .step_by(2)
        .map(|k| GapReport::new("odd_coeff_bound", k, f.coeff(k).norm(), 1.0 / n.weight(k), tolerance))
        .collect())
}

/// `(|beta_k|, sum_{j=1}^k (j |lambda_j|^2 - 1/j))` for `beta = exp(phi)`.
fn exponentiated_coefficient(phi: &TruncatedSeries, k: usize) -> Result<(f64, f64)> {
    check_index(k, 1, phi.order())?;
    let beta = phi.exp()?;
    let exponent: f64 = (1..=k)
        .map(|j| j as f64 * phi.coeff(j).norm_sqr() - 1.0 / j as f64)
        .sum();
    Ok((beta.coeff(k).norm(), exponent))
}

/// `|beta_k| <= exp(sum_{j=1}^k (j |lambda_j|^2 - 1/j))` in the unsquared form.
///
/// This form is false in general: `phi = 0.9 z` at `k = 1` gives `0.9 > e^{-0.19}`.
/// [`lebedev_milin_squared_check`] is the classical inequality.
pub fn lebedev_milin_check(phi: &TruncatedSeries, k: usize, tolerance: f64) -> Result<GapReport> {
    let (beta, exponent) = exponentiated_coefficient(phi, k)?;
    Ok(GapReport::new(
        "lebedev_milin_unsquared",
        k,
        beta,
        exponent.exp(),
        tolerance,
    ))
}

/// `|beta_k|^2 <= exp(sum_{j=1}^k (j |lambda_j|^2 - 1/j))`.
pub fn lebedev_milin_squared_check(phi: &TruncatedSeries, k: usize, tolerance: f64) -> Result<GapReport> {
    let (beta, exponent) = exponentiated_coefficient(phi, k)?;
    Ok(GapReport::new(
        "lebedev_milin",
        k,
        beta * beta,
        exponent.exp(),
        tolerance,
    ))
}

/// Result of minimizing `sum_{j=1}^k |p_j - nu^j|^2 / j` over grid points of the circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuSearch {
    pub nu: UnitModulus,
    pub achieved: f64,
    /// `H_k = sum_{j=1}^k 1/j`.
    pub harmonic: f64,
}

impl NuSearch {
    /// `sum_{j=1}^k (|p_j - nu^j|^2 - 1) / j`, the exponent that must be nonpositive.
    pub fn exponent(&self) -> f64 {
        self.achieved - self.harmonic
    }
}

pub fn harmonic(k: usize) -> f64 {
    (1..=k).map(|j| 1.0 / j as f64).sum()
}

pub fn leung_nu_search(p: &TruncatedSeries, k: usize, grid: usize) -> Result<NuSearch> {
    p.expect_constant(1.0)?;
    check_index(k, 1, p.order())?;
    if grid == 0 {
        return Err(Error::InvalidGrid("circle grid must be nonempty".into()));
    }
    let (nu, achieved) = minimize_on_circle(grid, |theta| {
        (1..=k)
            .map(|j| (p.coeff(j) - Complex64::cis(j as f64 * theta)).norm_sqr() / j as f64)
            .sum()
    });
    Ok(NuSearch {
        nu,
        achieved,
        harmonic: harmonic(k),
    })
}

pub fn leung_report(p: &TruncatedSeries, k: usize, grid: usize, tolerance: f64) -> Result<GapReport> {
    let search = leung_nu_search(p, k, grid)?;
    Ok(GapReport::new("unimodular_nu", k, search.achieved, search.harmonic, tolerance).with_witness(search.nu.value()))
}

/// `|k |a_k| - m |a_m|| <= |k^2 - m^2|`.
pub fn robertson_gap(f: &TruncatedSeries, k: usize, m: usize, tolerance: f64) -> Result<GapReport> {
    f.expect_normalized()?;
    if k == m {
        return Err(Error::EqualIndices(k));
    }
    check_index(k, 1, f.order())?;
    check_index(m, 1, f.order())?;
    let lhs = (k as f64 * f.coeff(k).norm() - m as f64 * f.coeff(m).norm()).abs();
    let bound = (int_pow(k as f64, 2) - int_pow(m as f64, 2)).abs();
    Ok(GapReport::new("robertson_gap", k, lhs, bound, tolerance).with_m(m))
}

/// `|(k+1) |a_{k+1}| - k |a_k|| <= 2k + 1`.
pub fn robertson_step(f: &TruncatedSeries, k: usize, tolerance: f64) -> Result<GapReport> {
    f.expect_normalized()?;
    check_index(k, 1, f.order().saturating_sub(1))?;
    let lhs = ((k + 1) as f64 * f.coeff(k + 1).norm() - k as f64 * f.coeff(k).norm()).abs();
    Ok(GapReport::new("robertson_step", k, lhs, (2 * k + 1) as f64, tolerance))
}

/// The step quantity against its triangle-inequality majorant
/// `|(k+1) b_{k+1} - k b_k| + sum_{j=1}^{k-1} |p_j| |(k+1-j) b_{k+1-j} - (k-j) b_{k-j}| + |p_k|`.
pub fn robertson_triangle(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    p: &TruncatedSeries,
    k: usize,
    tolerance: f64,
) -> Result<GapReport> {
    let step = robertson_step(f, k, tolerance)?;
    g.expect_normalized()?;
    check_index(k, 1, g.order().saturating_sub(1).min(p.order()))?;
    let b = |i: usize| g.coeff(i) * i as f64;
    let mut bound = (b(k + 1) - b(k)).norm() + p.coeff(k).norm();
    for j in 1..k {
        bound += p.coeff(j).norm() * (b(k + 1 - j) - b(k - j)).norm();
    }
    Ok(GapReport::new("robertson_triangle", k, step.lhs, bound, tolerance))
}

/// `|(k+1) a_{k+1} - k a_k - (c_k - c_{k-1})|` for `f = close_to_convex(g, p)`.
pub fn convolution_identity(f: &TruncatedSeries, g: &TruncatedSeries, p: &TruncatedSeries, k: usize) -> Result<f64> {
    let order = f.order();
    if g.order() < order || p.order() + 1 < order {
        return Err(Error::OrderTooLow {
            required: order,
            found: g.order().min(p.order() + 1),
        });
    }
    check_index(k, 1, order - 1)?;
    let c = convolution_coefficients(g, p, order)?;
    let lhs = f.coeff(k + 1) * (k + 1) as f64 - f.coeff(k) * k as f64;
    Ok((lhs - (c[k] - c[k - 1])).norm())
}

/// Report for an identity residual: passes when `residual <= tolerance`.
pub fn identity_report(label: &str, k: usize, residual: f64, tolerance: f64) -> GapReport {
    GapReport::new(label, k, residual, 0.0, tolerance)
}
