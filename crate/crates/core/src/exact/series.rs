use std::fmt;

use super::{Coefficient, Rational};
use crate::error::{Error, Result};

/// Truncated power series in `t`, exact through `t^order`.
///
/// Always holds exactly `order + 1` coefficients. Binary operations truncate
/// to the smaller of the two orders, so a result never claims more precision
/// than its inputs carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Series<C> {
    /// Series exact through `t^order` whose leading coefficients are `coeffs`.
    /// Missing coefficients are zero and coefficients past `order` are dropped.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![C::one()], order)
    }

    /// The series `t` (zero when `order` is 0).
    pub fn t(order: usize) -> Self {
        Series::new(vec![C::zero(), C::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `t^k`, or `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }

    pub fn constant_term(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k].plus(&other.coeffs[k]))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k].minus(&other.coeffs[k]))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(C::negated)
    }

    /// Multiply every coefficient by the ring element `factor`.
    pub fn scale(&self, factor: &C) -> Self {
        self.map(|c| c.times(factor))
    }

    pub fn scale_rational(&self, factor: &Rational) -> Self {
        self.map(|c| c.scale(factor))
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
                }
            }
        }
        Series { coeffs }
    }

    /// Multiplicative inverse by long division.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self
            .constant_term()
            .inverse()
            .ok_or(Error::NonInvertibleConstantTerm)?;
        let order = self.order();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for n in 1..=order {
            let mut acc = C::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc = acc.plus(&a.times(&out[n - k]));
                }
            }
            out.push(acc.times(&inv0).negated());
        }
        Ok(Series { coeffs: out })
    }

    /// Integer power by repeated squaring; negative exponents go through
    /// [`Series::inverse`].
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut result = Series::one(self.order());
        let mut square = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&square);
            }
            e >>= 1;
            if e > 0 {
                square = square.mul(&square);
            }
        }
        Ok(result)
    }

    /// Termwise derivative. The result is exact through `t^(order - 1)`, so a
    /// series of order 0 has no derivative to report.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::TruncationTooShort { needed: 1, got: 0 });
        }
        Ok(Series {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&Rational::from_integer((k as i64 + 1).into())))
                .collect(),
        })
    }

    /// Termwise antiderivative with zero constant term; order grows by one.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&Rational::new(1.into(), (k as i64 + 1).into())));
        }
        Series { coeffs }
    }

    /// Logarithm of a series with constant term 1, from `L' = a'/a`.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::BadConstantTerm { expected: "1" });
        }
        let order = self.order();
        if order == 0 {
            return Ok(Series::zero(0));
        }
        let quotient = self.derivative()?.mul(&self.inverse()?.truncate(order - 1));
        Ok(quotient.integral())
    }

    /// Exponential of a series with zero constant term, from `E' = a'E`:
    /// `n E_n = sum_{k=1..n} k a_k E_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::BadConstantTerm { expected: "0" });
        }
        let order = self.order();
        let weighted: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
            .collect();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(C::one());
        for n in 1..=order {
            let mut acc = C::zero();
            for k in 1..=n {
                if !weighted[k].is_zero() {
                    acc = acc.plus(&weighted[k].times(&out[n - k]));
                }
            }
            out.push(acc.scale(&Rational::new(1.into(), (n as i64).into())));
        }
        Ok(Series { coeffs: out })
    }
}

impl Series<Rational> {
    /// Polynomial in `t` with small integer coefficients, e.g. `[1, -1, -1]`
    /// for `1 - t - t^2`.
    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Series::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
            order,
        )
    }
}

/// `c0 + c1*t + ... + O(t^(K+1))`, listing every stored coefficient.
impl<C: Coefficient> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        write!(f, " + O(t^{})", self.coeffs.len())
    }
}
