//! Scalars for window matrices: exact Gaussian rationals and `f64` complexes.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i128>;
pub type GaussRational = Complex<Rational>;
pub type Float = Complex<f64>;

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic is exact; float scalars compare within a tolerance.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn norm_sqr(&self) -> Self;
    /// `|self|²` as a float, for reporting and thresholds.
    fn norm_sqr_f64(&self) -> f64;
    /// Equality, up to `|a - b|² ≤ tol²` for inexact scalars.
    fn near(&self, other: &Self, tol: f64) -> bool;
    /// Real and non-negative (up to `tol` for inexact scalars).
    fn is_nonneg_real(&self, tol: f64) -> bool;
    /// `self ≤ other` for real values (imaginary parts are ignored).
    fn real_le(&self, other: &Self, tol: f64) -> bool;
    /// Real and imaginary parts rendered for serialization.
    fn parts(&self) -> (String, String);
}

/// Scalars with exact division, used by rank computations.
pub trait Field: Scalar {
    fn inv(&self) -> Self;
}

fn rat_string(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Scalar for GaussRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(Rational::from_integer(v as i128), Rational::zero())
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn norm_sqr(&self) -> Self {
        Complex::new(Complex::norm_sqr(self), Rational::zero())
    }
    fn norm_sqr_f64(&self) -> f64 {
        let n = Complex::norm_sqr(self);
        *n.numer() as f64 / *n.denom() as f64
    }
    fn near(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
    fn is_nonneg_real(&self, _tol: f64) -> bool {
        self.im.is_zero() && self.re >= Rational::zero()
    }
    fn real_le(&self, other: &Self, _tol: f64) -> bool {
        self.re <= other.re
    }
    fn parts(&self) -> (String, String) {
        (rat_string(&self.re), rat_string(&self.im))
    }
}

impl Field for GaussRational {
    fn inv(&self) -> Self {
        Complex::inv(self)
    }
}

impl Scalar for Float {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(v as f64, 0.0)
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn norm_sqr(&self) -> Self {
        Complex::new(Complex::norm_sqr(self), 0.0)
    }
    fn norm_sqr_f64(&self) -> f64 {
        Complex::norm_sqr(self)
    }
    fn near(&self, other: &Self, tol: f64) -> bool {
        Complex::norm_sqr(&(self - other)) <= tol * tol
    }
    fn is_nonneg_real(&self, tol: f64) -> bool {
        self.im * self.im <= tol * tol && self.re >= -tol
    }
    fn real_le(&self, other: &Self, tol: f64) -> bool {
        self.re <= other.re + tol
    }
    fn parts(&self) -> (String, String) {
        (format!("{:?}", self.re), format!("{:?}", self.im))
    }
}

impl Field for Float {
    fn inv(&self) -> Self {
        Complex::inv(self)
    }
}

/// Exact `p/q + (r/s)i`.
pub fn gauss(re: (i128, i128), im: (i128, i128)) -> GaussRational {
    Complex::new(Rational::new(re.0, re.1), Rational::new(im.0, im.1))
}

/// Nearest float value of an exact scalar.
pub fn to_float(z: &GaussRational) -> Float {
    let f = |r: &Rational| *r.numer() as f64 / *r.denom() as f64;
    Complex::new(f(&z.re), f(&z.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_field_ops() {
        let z = gauss((1, 2), (3, 4));
        assert_eq!(z * Field::inv(&z), <GaussRational as Scalar>::one());
        assert_eq!(Scalar::norm_sqr(&z), gauss((13, 16), (0, 1)));
        assert_eq!(z.parts(), ("1/2".into(), "3/4".into()));
        assert!(Scalar::norm_sqr(&z).is_nonneg_real(0.0));
    }

    #[test]
    fn float_tolerance() {
        let a = Complex::new(1.0, 0.0);
        let b = Complex::new(1.0 + 1e-12, 0.0);
        assert!(a.near(&b, 1e-9));
        assert!(!a.near(&b, 1e-13));
        assert!(Complex::new(-1e-12, 0.0).is_nonneg_real(1e-9));
    }
}
