use num_traits::{One, Zero};

use super::triangle::{row_width, CoeffTriangle};
use super::{factorial, rising_factorial, rising_factorial_poly};
use crate::error::{Error, Result};
use crate::exact::{Integer, Poly, Rational, Series};
use crate::fibonacci::fibonacci_base;

/// `p_N(x)` in two bases: `sum_i a_i(N) <x>_{N-i}` and the expanded
/// monomial form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RisingFactorialPoly {
    degree: usize,
    rising: Vec<Integer>,
    monomial: Poly,
}

impl RisingFactorialPoly {
    /// Read row `n` of `triangle` and expand it.
    pub fn from_triangle(triangle: &CoeffTriangle, n: usize) -> Result<Self> {
        let row = triangle
            .row(n)
            .ok_or(Error::IndexOutOfTriangle { n, i: 0 })?;
        debug_assert_eq!(row.len(), row_width(n));
        let monomial = row.iter().enumerate().filter(|(_, a)| !a.is_zero()).fold(
            Poly::zero(),
            |acc, (i, a)| {
                let term =
                    rising_factorial_poly((n - i) as u64).scale(&Rational::from_integer(a.clone()));
                &acc + &term
            },
        );
        Ok(RisingFactorialPoly {
            degree: n,
            rising: row.to_vec(),
            monomial,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Entry `i` multiplies `<x>_{N-i}`.
    pub fn rising(&self) -> &[Integer] {
        &self.rising
    }

    pub fn monomial(&self) -> &Poly {
        &self.monomial
    }

    /// Evaluate through the rising-factorial form.
    pub fn eval_rising(&self, x: &Rational) -> Rational {
        self.rising
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let k = self.degree - i;
                let rising = (0..k).fold(Rational::one(), |acc, j| {
                    acc * (x + Rational::from_integer(j.into()))
                });
                rising * Rational::from_integer(a.clone())
            })
            .sum()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.monomial.eval(x)
    }

    /// Evaluate at an integer with integer arithmetic only.
    pub fn eval_int(&self, x: &Integer) -> Integer {
        self.rising
            .iter()
            .enumerate()
            .map(|(i, a)| a * rising_factorial(x, (self.degree - i) as u64))
            .sum()
    }
}

/// `p_N(x)` from the recurrence-built triangle.
pub fn conv_fib_poly(n: usize) -> RisingFactorialPoly {
    RisingFactorialPoly::from_triangle(&CoeffTriangle::by_recurrence(n), n)
        .expect("triangle covers row n")
}

/// `exp(x * (-log(1 - t - t^2)))` through `t^order`, with coefficients in
/// `Q[x]`. Coefficient `n` is `p_n(x) / n!`.
pub fn symbolic_generating_series(order: usize) -> Series<Poly> {
    let neg_log = fibonacci_base(order)
        .log()
        .expect("constant term is 1")
        .neg();
    let x = Poly::x();
    neg_log
        .map(|c| x.scale(c))
        .exp()
        .expect("x * L has zero constant term")
}

/// `p_N(x) = N! [t^N] exp(x * (-log(1 - t - t^2)))`, built without the
/// coefficient triangle.
pub fn conv_fib_poly_oracle(n: usize, order: usize) -> Result<Poly> {
    if order < n {
        return Err(Error::TruncationTooShort {
            needed: n,
            got: order,
        });
    }
    let series = symbolic_generating_series(order);
    let coeff = series.coeff(n).expect("order >= n");
    Ok(coeff.scale(&Rational::from_integer(factorial(n as u64))))
}
