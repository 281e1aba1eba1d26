use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Allowed deviation of `|value|` from 1.
pub const UNIT_TOL: f64 = 1e-12;

/// A complex number on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "Complex64")]
pub struct UnitModulus(Complex64);

impl UnitModulus {
    pub const ONE: UnitModulus = UnitModulus(Complex64::new(1.0, 0.0));

    pub fn new(value: Complex64) -> Result<Self> {
        let modulus = value.norm();
        if !modulus.is_finite() || (modulus - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnimodular { value, modulus });
        }
        Ok(Self(value))
    }

    /// `e^{i theta}`.
    pub fn from_angle(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NotUnimodular {
                value: Complex64::new(f64::NAN, f64::NAN),
                modulus: f64::NAN,
            });
        }
        Ok(Self(Complex64::cis(theta)))
    }

    /// Angle in degrees. Multiples of 90 degrees map to exact values of the
    /// form `±1`, `±i` so that grid-aligned inputs produce clean coefficients.
    pub fn from_degrees(degrees: f64) -> Result<Self> {
        if !degrees.is_finite() {
            return Self::from_angle(degrees);
        }
        let quarter = degrees / 90.0;
        if quarter == quarter.round() {
            let value = match (quarter.rem_euclid(4.0)) as u8 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
            return Ok(Self(value));
        }
        Self::from_angle(degrees * PI / 180.0)
    }

    /// The `index`-th of `count` equally spaced points `e^{2 pi i index / count}`.
    pub fn root_of_unity(index: usize, count: usize) -> Self {
        Self(Complex64::cis(2.0 * PI * index as f64 / count as f64))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn conj(self) -> Self {
        Self(self.0.conj())
    }

    pub fn powi(self, exp: usize) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for _ in 0..exp {
            acc *= self.0;
        }
        acc
    }
}

impl From<UnitModulus> for Complex64 {
    fn from(u: UnitModulus) -> Self {
        u.0
    }
}

impl<'de> Deserialize<'de> for UnitModulus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = Complex64::deserialize(d)?;
        UnitModulus::new(value).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_off_circle() {
        assert!(UnitModulus::new(Complex64::new(1.0 + 1e-9, 0.0)).is_err());
        assert!(UnitModulus::new(Complex64::new(0.6, 0.8)).is_ok());
        assert!(UnitModulus::from_angle(f64::NAN).is_err());
    }

    #[test]
    fn quadrant_degrees_are_exact() {
        assert_eq!(
            UnitModulus::from_degrees(180.0).unwrap().value(),
            Complex64::new(-1.0, 0.0)
        );
        assert_eq!(
            UnitModulus::from_degrees(-90.0).unwrap().value(),
            Complex64::new(0.0, -1.0)
        );
        assert_eq!(
            UnitModulus::from_degrees(720.0).unwrap().value(),
            Complex64::new(1.0, 0.0)
        );
        let u = UnitModulus::from_degrees(45.0).unwrap().value();
        assert!((u.re - u.im).abs() < 1e-15);
    }
}
