//! Literal nested sums. Each recursion level is one summation sign with its
//! stated limits; nothing is memoized, so these stay independent of the
//! convolution and series code they are compared against.

use num_traits::Zero;

use crate::convolved::factorial;
use crate::exact::Integer;
use crate::fibonacci::FibTable;

/// `sum_{l_1=0}^{n} sum_{l_2=0}^{n-l_1} ... sum_{l_r=0}^{n-l_1-...-l_{r-1}}
///  F_{l_1} ... F_{l_r} F_{n-l_1-...-l_r}`, which equals `p_n(r+1) / n!`.
///
/// Visits `binom(n + r, r)` index tuples.
pub fn nested_fib_sum(n: usize, folds: u32, fibs: &FibTable) -> Integer {
    fn level(remaining: usize, depth: u32, fibs: &FibTable) -> Integer {
        let f = |k: usize| fibs.get(k as i64).expect("table covers 0..=n");
        if depth == 0 {
            return f(remaining).clone();
        }
        let mut acc = Integer::zero();
        for l in 0..=remaining {
            acc += f(l) * level(remaining - l, depth - 1, fibs);
        }
        acc
    }
    level(n, folds, fibs)
}

/// Pascal rows `0 ..= n_max`.
pub fn pascal(n_max: usize) -> Vec<Vec<Integer>> {
    let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = vec![Integer::from(1); n + 1];
        for k in 1..n {
            row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
        }
        rows.push(row);
    }
    rows
}

/// `p_0(1), ..., p_{n_max}(1)` as `l! F_l`.
pub fn p_at_one(n_max: usize, fibs: &FibTable) -> Vec<Integer> {
    (0..=n_max)
        .map(|l| factorial(l as u64) * fibs.get(l as i64).expect("table covers 0..=n_max"))
        .collect()
}

/// `sum_{l_1} ... sum_{l_{r-1}} binom(n, l_1) binom(n-l_1, l_2) ...
///  (prod_k p_{l_k}(1)) p_{n-l_1-...-l_{r-1}}(1)`, which equals `p_n(r)`.
///
/// `p1` and `binom` must cover indices up to `n`.
pub fn nested_binomial_sum(n: usize, r: u32, p1: &[Integer], binom: &[Vec<Integer>]) -> Integer {
    fn level(remaining: usize, depth: u32, p1: &[Integer], binom: &[Vec<Integer>]) -> Integer {
        if depth == 0 {
            return p1[remaining].clone();
        }
        let mut acc = Integer::zero();
        for l in 0..=remaining {
            acc += &binom[remaining][l] * &p1[l] * level(remaining - l, depth - 1, p1, binom);
        }
        acc
    }
    assert!(r >= 1, "nested product needs at least one factor");
    level(n, r - 1, p1, binom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn fib_self_convolution() {
        let fibs = FibTable::with_range(0, 10);
        // F_0 F_2 + F_1 F_1 + F_2 F_0 = 2 + 1 + 2
        assert_eq!(nested_fib_sum(2, 1, &fibs), int(5));
        assert_eq!(nested_fib_sum(7, 0, &fibs), int(21));
        for r in 0..5 {
            assert_eq!(nested_fib_sum(0, r, &fibs), int(1));
        }
    }

    #[test]
    fn triple_convolution_small() {
        // n = 3, two folds: enumerate l1, l2 directly.
        let fibs = FibTable::with_range(0, 3);
        let f = [1, 1, 2, 3];
        let mut expected = 0;
        for l1 in 0..=3 {
            for l2 in 0..=3 - l1 {
                expected += f[l1] * f[l2] * f[3 - l1 - l2];
            }
        }
        assert_eq!(nested_fib_sum(3, 2, &fibs), int(expected));
    }

    #[test]
    fn pascal_rows() {
        let p = pascal(5);
        assert_eq!(p[5], [1, 5, 10, 10, 5, 1].map(int).to_vec());
        assert_eq!(p[0], vec![int(1)]);
    }

    #[test]
    fn single_factor_is_identity() {
        let fibs = FibTable::with_range(0, 8);
        let p1 = p_at_one(8, &fibs);
        let binom = pascal(8);
        for n in 0..=8 {
            assert_eq!(nested_binomial_sum(n, 1, &p1, &binom), p1[n]);
        }
    }
}
