//! Exact arithmetic: big integers, normalized rationals, dense polynomials in
//! `x` and truncated power series in `t`.
//!
//! Integers and rationals are the `num` crate types; `BigRational` keeps its
//! values reduced with a positive denominator, and zero is stored as `0/1`.

mod poly;
mod series;
pub mod text;

use std::fmt;

use num_traits::{One, Zero};

pub use poly::Poly;
pub use series::Series;

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;

/// Ring of series coefficients.
///
/// Implemented for [`Rational`] and for [`Poly`] (polynomials in `x` over the
/// rationals). Every ring here is a `Q`-algebra, so coefficients can be
/// scaled by a rational, which is what termwise integration needs.
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + Zero + One
{
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scale(&self, factor: &Rational) -> Self;
    /// Multiplicative inverse, if it exists in the ring.
    fn inverse(&self) -> Option<Self>;
}

impl Coefficient for Rational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn scale(&self, factor: &Rational) -> Self {
        self * factor
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn int(value: i64) -> Integer {
    Integer::from(value)
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(Integer::from(numer), Integer::from(denom))
}

pub fn rat_from_int(value: Integer) -> Rational {
    Rational::from_integer(value)
}
