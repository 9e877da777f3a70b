//! Minimal commutative-semiring interface shared by the symbolic and numeric
//! recursions.
//!
//! Every recursion in this crate is a polynomial with nonnegative integer
//! coefficients in its state variables, so it can be run unchanged over
//! polynomials, exact integers or rationals, doubles, or log-domain values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Semiring: Clone {
    fn empty_sum() -> Self;
    fn empty_product() -> Self;
    fn from_u64(value: u64) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;

    /// `self * k` for a small nonnegative integer constant.
    fn scaled(&self, k: u64) -> Self {
        self.times(&Self::from_u64(k))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::empty_product();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// Sum of a slice of terms.
pub fn sum<S: Semiring>(terms: &[S]) -> S {
    terms.iter().fold(S::empty_sum(), |acc, t| acc.plus(t))
}

impl Semiring for BigInt {
    fn empty_sum() -> Self {
        Zero::zero()
    }
    fn empty_product() -> Self {
        One::one()
    }
    fn from_u64(value: u64) -> Self {
        BigInt::from(value)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        self * other
    }
    fn scaled(&self, k: u64) -> Self {
        self * k
    }
}

impl Semiring for BigRational {
    fn empty_sum() -> Self {
        Zero::zero()
    }
    fn empty_product() -> Self {
        One::one()
    }
    fn from_u64(value: u64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BigRational::zero();
        }
        self * other
    }
}

impl Semiring for f64 {
    fn empty_sum() -> Self {
        0.0
    }
    fn empty_product() -> Self {
        1.0
    }
    fn from_u64(value: u64) -> Self {
        value as f64
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

/// A nonnegative real stored as its natural logarithm. Zero is `-inf`.
///
/// Addition is log-sum-exp; multiplication adds logarithms. Only valid for
/// recursions whose terms never subtract, which holds for all recursions here.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogPos(pub f64);

impl LogPos {
    pub fn from_value(v: f64) -> Self {
        LogPos(v.ln())
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0.exp()
    }
}

impl Semiring for LogPos {
    fn empty_sum() -> Self {
        LogPos(f64::NEG_INFINITY)
    }
    fn empty_product() -> Self {
        LogPos(0.0)
    }
    fn from_u64(value: u64) -> Self {
        LogPos((value as f64).ln())
    }
    fn plus(&self, other: &Self) -> Self {
        let (hi, lo) = if self.0 >= other.0 {
            (self.0, other.0)
        } else {
            (other.0, self.0)
        };
        if lo == f64::NEG_INFINITY {
            return LogPos(hi);
        }
        LogPos(hi + (lo - hi).exp().ln_1p())
    }
    fn times(&self, other: &Self) -> Self {
        if self.0 == f64::NEG_INFINITY || other.0 == f64::NEG_INFINITY {
            return LogPos::empty_sum();
        }
        LogPos(self.0 + other.0)
    }
}
