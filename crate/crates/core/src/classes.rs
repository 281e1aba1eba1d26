//! Constructors for members of `S_n` and of the close-to-convex class, plus a
//! sampling-based membership test.
//!
//! Members of `S_n` come from a Carathéodory function `p`: the condition
//! `D^{n+1} f / D^n f = p` integrates to `D^n f(z) = z exp(sum_j p_j z^j / j)`,
//! and `f` is recovered with `I_n`.

use num_complex::Complex64;

use crate::caratheodory::DiskGrid;
use crate::error::{Error, Result};
use crate::salagean::{apply_d, apply_i, SalageanOrder};
use crate::series::{TruncatedSeries, NORM_TOL};

pub use crate::unit::UnitModulus;

fn require_order(series: &TruncatedSeries, required: usize) -> Result<()> {
    if series.order() < required {
        return Err(Error::OrderTooLow {
            required,
            found: series.order(),
        });
    }
    Ok(())
}

/// `z * h(z)` as a series of order `h.order() + 1`.
fn times_z(h: &TruncatedSeries) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(h.order() + 2);
    coeffs.push(Complex64::new(0.0, 0.0));
    coeffs.extend_from_slice(h.coeffs());
    TruncatedSeries::from_vec_unchecked(coeffs)
}

/// Member of `S_n` of order `order` determined by `p` (`p_0 = 1`, `p.order() >= order - 1`).
pub fn member_from_p(p: &TruncatedSeries, n: SalageanOrder, order: usize) -> Result<TruncatedSeries> {
    p.expect_constant(1.0)?;
    if order < 2 {
        return Err(Error::OrderTooLow {
            required: 2,
            found: order,
        });
    }
    require_order(p, order - 1)?;
    let mut log_coeffs = vec![Complex64::new(0.0, 0.0); order];
    for (j, slot) in log_coeffs.iter_mut().enumerate().skip(1) {
        *slot = p.coeff(j) / j as f64;
    }
    let dn_over_z = TruncatedSeries::new(log_coeffs)?.exp()?;
    apply_i(&times_z(&dn_over_z), n)
}

/// `I_n { z / ((1 - nu z)(1 - gamma z)) }`.
pub fn extremal(n: SalageanOrder, nu: UnitModulus, gamma: UnitModulus, order: usize) -> Result<TruncatedSeries> {
    if order < 2 {
        return Err(Error::OrderTooLow {
            required: 2,
            found: order,
        });
    }
    let product =
        TruncatedSeries::geometric(nu.value(), order - 1)?.mul(&TruncatedSeries::geometric(gamma.value(), order - 1)?);
    apply_i(&times_z(&product), n)
}

/// `q(z^2)` truncated at `order`.
pub fn substitute_square(q: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
    for (k, slot) in coeffs.iter_mut().enumerate().step_by(2) {
        *slot = q.coeff(k / 2);
    }
    TruncatedSeries::new(coeffs)
}

/// Odd member of `S_n` built from `p(z) = q(z^2)`.
pub fn odd_member_from_q(q: &TruncatedSeries, n: SalageanOrder, order: usize) -> Result<TruncatedSeries> {
    q.expect_constant(1.0)?;
    if order < 2 {
        return Err(Error::OrderTooLow {
            required: 2,
            found: order,
        });
    }
    require_order(q, (order - 1) / 2)?;
    let p = substitute_square(q, order - 1)?;
    member_from_p(&p, n, order)
}

/// Coefficients `c_k = sum_{j=0}^k p_j (k+1-j) b_{k+1-j}` of `g'(z) p(z)`, for `k = 0..order`.
pub fn convolution_coefficients(g: &TruncatedSeries, p: &TruncatedSeries, order: usize) -> Result<Vec<Complex64>> {
    g.expect_normalized()?;
    p.expect_constant(1.0)?;
    require_order(g, order)?;
    if order >= 1 {
        require_order(p, order - 1)?;
    }
    Ok((0..order)
        .map(|k| {
            (0..=k)
                .map(|j| p.coeff(j) * g.coeff(k + 1 - j) * (k + 1 - j) as f64)
                .sum()
        })
        .collect())
}

/// The close-to-convex `f` with `f' = g' p`.
pub fn close_to_convex(g: &TruncatedSeries, p: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    let c = convolution_coefficients(g, p, order)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Complex64::new(0.0, 0.0));
    coeffs.extend(c.iter().enumerate().map(|(k, &ck)| ck / (k + 1) as f64));
    TruncatedSeries::new(coeffs)
}

/// `D^{n+1} f / D^n f` recomputed as a series of order `f.order() - 1`.
pub fn recovered_p(f: &TruncatedSeries, n: SalageanOrder) -> Result<TruncatedSeries> {
    let dn = apply_d(f, n)?;
    let dn1 = apply_d(f, n.next())?;
    let over_z = |s: &TruncatedSeries| TruncatedSeries::new(s.coeffs()[1..].to_vec());
    let h = over_z(&dn)?;
    let inverse = h.log()?.scale(Complex64::new(-1.0, 0.0)).exp()?;
    Ok(over_z(&dn1)?.mul(&inverse))
}

/// Minimum over `grid` of `Re(D^{n+1} f(z) / D^n f(z))`.
///
/// The quotient is formed as a series (`D^{n+1} f / z` times the reciprocal of
/// `D^n f / z`) and then evaluated. Dividing the two truncated polynomials
/// pointwise instead lets their tails dominate near `|z| = 0.9`: for the Koebe
/// function at `z = -0.9` the numerator tail is about 7 against a denominator
/// of about 0.013.
pub fn verify_membership(f: &TruncatedSeries, n: SalageanOrder, grid: &DiskGrid) -> Result<f64> {
    grid.validate()?;
    let dn = apply_d(f, n)?;
    let dn1 = apply_d(f, n.next())?;
    let over_z = |s: &TruncatedSeries| TruncatedSeries::new(s.coeffs()[1..].to_vec());
    let quotient = over_z(&dn1)?.mul(&over_z(&dn)?.reciprocal()?);
    let mut min = f64::INFINITY;
    for z in grid.points() {
        let den = dn.evaluate(z);
        // relative to the size of the terms, so rounding noise around a root still counts as zero
        let scale: f64 = dn.coeffs().iter().rev().fold(0.0, |acc, c| acc * z.norm() + c.norm());
        if den.norm() <= 1e-13 * scale {
            return Err(Error::ZeroDenominator(z));
        }
        min = min.min(quotient.evaluate(z).re);
    }
    Ok(min)
}

/// Whether every even-index coefficient vanishes to within the normalization tolerance.
pub fn is_odd(f: &TruncatedSeries) -> bool {
    f.coeffs().iter().step_by(2).all(|c| c.norm() <= NORM_TOL)
}
