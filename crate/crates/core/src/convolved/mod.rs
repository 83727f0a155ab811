//! Convolved Fibonacci numbers `p_n(x)`, defined by
//! `(1 - t - t^2)^(-x) = sum_n p_n(x) t^n / n!`.
//!
//! Integer arguments come from one series power (the base is a finite
//! polynomial when `r <= 0`) or from the falling-factorial recurrence
//! `p_n(r+1) = sum_l (n)_l p_{n-l}(r) F_l`. For symbolic `x`, `p_N(x)` is a
//! degree-`N` polynomial whose rising-factorial coefficients form the
//! triangle `a_i(N)`.

mod poly;
mod triangle;

use num_traits::{One, Zero};

use crate::exact::{Integer, Poly, Rational};
use crate::fibonacci::{fibonacci_base, FibTable};

pub use poly::{
    conv_fib_poly, conv_fib_poly_oracle, symbolic_generating_series, RisingFactorialPoly,
};
pub use triangle::{row_width, triangle_closed, triangle_recurrence, CoeffTriangle};

pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(Integer::one(), |acc, j| acc * (n - j) / (j + 1))
}

/// `(x)_l = x (x-1) ... (x-l+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(x: &Integer, l: u64) -> Integer {
    (0..l).fold(Integer::one(), |acc, j| acc * (x - j))
}

/// `<x>_l = x (x+1) ... (x+l-1)`, with `<x>_0 = 1`.
pub fn rising_factorial(x: &Integer, l: u64) -> Integer {
    (0..l).fold(Integer::one(), |acc, j| acc * (x + j))
}

/// `((n)_l, <n>_l)`.
pub fn factorial_powers(n: i64, l: u64) -> (Integer, Integer) {
    let n = Integer::from(n);
    (falling_factorial(&n, l), rising_factorial(&n, l))
}

/// `<x>_k` as a polynomial in `x`.
pub fn rising_factorial_poly(k: u64) -> Poly {
    (0..k).fold(Poly::constant(Rational::one()), |acc, j| {
        &acc * &Poly::x_plus(Rational::from_integer(j.into()))
    })
}

/// `(x)_k` as a polynomial in `x`.
pub fn falling_factorial_poly(k: u64) -> Poly {
    (0..k).fold(Poly::constant(Rational::one()), |acc, j| {
        &acc * &Poly::x_plus(Rational::from_integer(-Integer::from(j)))
    })
}

/// `[p_0(r), ..., p_{n_max}(r)]` from a single power of `1 - t - t^2`.
pub fn conv_fib_row(r: i64, n_max: usize) -> Vec<Integer> {
    let power = fibonacci_base(n_max)
        .pow(-r)
        .expect("1 - t - t^2 has a unit constant term");
    let mut fact = Integer::one();
    power
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            if n > 0 {
                fact *= n;
            }
            debug_assert!(c.is_integer());
            c.numer() * &fact
        })
        .collect()
}

/// `p_n(r) = n! [t^n] (1 - t - t^2)^(-r)`.
pub fn conv_fib_int(n: usize, r: i64) -> Integer {
    conv_fib_row(r, n).pop().expect("row has n + 1 entries")
}

/// Rows `p_*(1), ..., p_*(r_max)` through `n_max`, built from `p_n(1) = n! F_n`
/// by `p_n(r+1) = sum_l (n)_l p_{n-l}(r) F_l`.
pub fn conv_fib_rows_by_recurrence(r_max: u32, n_max: usize) -> Vec<Vec<Integer>> {
    if r_max == 0 {
        return Vec::new();
    }
    let fibs = FibTable::with_range(0, n_max as i64);
    let fib = |l: usize| fibs.get(l as i64).expect("table covers 0..=n_max");
    let factorials: Vec<Integer> = (0..=n_max as u64).map(factorial).collect();

    let mut rows = Vec::with_capacity(r_max as usize);
    rows.push(
        (0..=n_max)
            .map(|n| &factorials[n] * fib(n))
            .collect::<Vec<_>>(),
    );
    for _ in 1..r_max {
        let prev = rows.last().expect("seeded with row 1");
        let next = (0..=n_max)
            .map(|n| {
                (0..=n)
                    .map(|l| {
                        // (n)_l = n! / (n-l)!
                        let falling = &factorials[n] / &factorials[n - l];
                        falling * &prev[n - l] * fib(l)
                    })
                    .sum()
            })
            .collect();
        rows.push(next);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::fibonacci::fib;

    #[test]
    fn factorial_power_values() {
        assert_eq!(factorial_powers(5, 2), (int(20), int(30)));
        assert_eq!(factorial_powers(-7, 0), (int(1), int(1)));
        for k in 0..10 {
            assert_eq!(factorial_powers(1, k).1, factorial(k));
        }
        // (0)_l vanishes for l >= 1.
        assert_eq!(factorial_powers(0, 3).0, int(0));
        assert_eq!(factorial_powers(-1, 3), (int(-6), int(0)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(3, 4), int(0));
        assert_eq!(binomial(40, 20), int(137846528820));
    }

    #[test]
    fn factorial_polys_evaluate_like_products() {
        for k in 0..7 {
            for x in -4..6 {
                let (falling, rising) = factorial_powers(x, k);
                assert_eq!(
                    rising_factorial_poly(k).eval(&rat(x, 1)),
                    Rational::from_integer(rising)
                );
                assert_eq!(
                    falling_factorial_poly(k).eval(&rat(x, 1)),
                    Rational::from_integer(falling)
                );
            }
        }
    }

    #[test]
    fn single_values() {
        assert_eq!(conv_fib_int(3, 1), int(18));
        assert_eq!(conv_fib_int(2, 2), int(10));
        assert_eq!(conv_fib_int(0, 0), int(1));
        for n in 1..6 {
            assert_eq!(conv_fib_int(n, 0), int(0));
        }
        // (1 - t - t^2)^1 has t^2 coefficient -1.
        assert_eq!(conv_fib_int(2, -1), int(-2));
    }

    #[test]
    fn rows() {
        let expected: Vec<Integer> = [1, 1, 4, 18, 120, 960, 9360].into_iter().map(int).collect();
        assert_eq!(conv_fib_row(1, 6), expected);
        assert_eq!(conv_fib_row(0, 3), vec![int(1), int(0), int(0), int(0)]);
        let self_conv = [1, 2, 5, 10, 20];
        let expected: Vec<Integer> = (0..5)
            .map(|n| factorial(n) * self_conv[n as usize])
            .collect();
        assert_eq!(conv_fib_row(2, 4), expected);
    }

    #[test]
    fn row_agrees_with_single_values() {
        for r in -4..=5 {
            let row = conv_fib_row(r, 12);
            for (n, v) in row.iter().enumerate() {
                assert_eq!(v, &conv_fib_int(n, r), "p_{n}({r})");
            }
        }
    }

    #[test]
    fn p_zero_of_r_is_one() {
        for r in -6..=6 {
            assert_eq!(conv_fib_int(0, r), int(1));
        }
    }

    #[test]
    fn factorial_times_fib_law_to_200() {
        let row = conv_fib_row(1, 200);
        for (n, v) in row.iter().enumerate() {
            assert_eq!(v, &(factorial(n as u64) * fib(n as i64)), "n = {n}");
        }
    }

    #[test]
    fn recurrence_rows_match_series_rows() {
        let rows = conv_fib_rows_by_recurrence(6, 30);
        assert_eq!(rows.len(), 6);
        for (idx, row) in rows.iter().enumerate() {
            assert_eq!(row, &conv_fib_row(idx as i64 + 1, 30), "r = {}", idx + 1);
        }
        assert!(conv_fib_rows_by_recurrence(0, 5).is_empty());
    }
}
