//! The field of coefficients.
//!
//! Every linear-algebra routine in this crate is generic over [`Scalar`]. The
//! exact instance is [`crate::Rational`]; `f64` and `f32` implement the trait
//! with a magnitude threshold for zero tests so that the same code paths can be
//! exercised numerically, but nothing certified is ever computed in floating
//! point.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, Zero};

pub trait Scalar:
    Num + Signed + FromPrimitive + Clone + Debug + Display + Send + Sync + 'static
{
    /// `true` when zero tests are exact.
    const EXACT: bool;

    /// Zero test used by elimination. Exact types compare with zero.
    fn is_negligible(&self) -> bool;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable in scalar type")
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }

    /// `self -= a * b`, the inner step of every elimination.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = a.clone() * b.clone();
        let cur = std::mem::replace(self, Self::zero());
        *self = cur - prod;
    }

    /// `self += a * b`.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = a.clone() * b.clone();
        let cur = std::mem::replace(self, Self::zero());
        *self = cur + prod;
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-4
    }
}

/// Parses `n` or `p/q` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str_radix(n.trim(), 10).ok()?;
            let d = BigInt::from_str_radix(d.trim(), 10).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => BigInt::from_str_radix(text, 10)
            .ok()
            .map(BigRational::from_integer),
    }
}
