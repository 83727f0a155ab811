//! Fibonacci numbers with `F_0 = F_1 = 1`, extended to negative indices by
//! running the recurrence backwards: `F_{n-2} = F_n - F_{n-1}`.
//!
//! Under this indexing the backward values are `F_{-1} = 0`, `F_{-2} = 1`,
//! `F_{-3} = -1`, ... and satisfy `F_{-n} = (-1)^n F_{n-2}`.

use std::collections::VecDeque;

use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{Integer, Rational, Series};
use crate::identities::{Counterexample, VerificationReport};

/// `F_n` without a table.
pub fn fib(n: i64) -> Integer {
    let (mut prev, mut cur) = (Integer::from(1), Integer::from(1)); // F_0, F_1
    if n >= 0 {
        for _ in 0..n {
            let next = &prev + &cur;
            prev = std::mem::replace(&mut cur, next);
        }
        prev
    } else {
        // Step (F_k, F_{k+1}) -> (F_{k-1}, F_k) until k = n.
        for _ in 0..n.unsigned_abs() {
            let before = &cur - &prev;
            cur = std::mem::replace(&mut prev, before);
        }
        prev
    }
}

/// Contiguous memoized range `F_lo ..= F_hi`, grown on demand in either
/// direction. Reads borrow immutably; growing needs `&mut self`.
#[derive(Clone, Debug)]
pub struct FibTable {
    lo: i64,
    values: VecDeque<Integer>,
}

impl Default for FibTable {
    fn default() -> Self {
        Self::new()
    }
}

impl FibTable {
    pub fn new() -> Self {
        FibTable {
            lo: 0,
            values: VecDeque::from([Integer::from(1), Integer::from(1)]),
        }
    }

    pub fn with_range(lo: i64, hi: i64) -> Self {
        let mut table = Self::new();
        table.ensure(lo, hi);
        table
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    /// Grow the table to cover `lo ..= hi`.
    pub fn ensure(&mut self, lo: i64, hi: i64) {
        while self.hi() < hi {
            let n = self.values.len();
            let next = &self.values[n - 1] + &self.values[n - 2];
            self.values.push_back(next);
        }
        while self.lo > lo {
            let before = &self.values[1] - &self.values[0];
            self.values.push_front(before);
            self.lo -= 1;
        }
    }

    pub fn get(&self, n: i64) -> Option<&Integer> {
        if n < self.lo {
            return None;
        }
        self.values.get((n - self.lo) as usize)
    }

    /// `F_n`, growing the table if needed.
    pub fn value(&mut self, n: i64) -> &Integer {
        self.ensure(n, n);
        self.get(n).expect("range was just extended")
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Integer)> {
        (self.lo..).zip(self.values.iter())
    }
}

/// `1 - t - t^2` through `t^order`.
pub fn fibonacci_base(order: usize) -> Series<Rational> {
    Series::from_ints(&[1, -1, -1], order)
}

/// Check that inverting `1 - t - t^2` reproduces `F_0 ..= F_order`, and that
/// comparing coefficients in `(1 - t - t^2) * sum F_k t^k = 1` gives
/// `F_0 = 1`, `F_1 - F_0 = 0` and `F_k - F_{k-1} - F_{k-2} = 0`.
pub fn fib_genfun_check(order: usize) -> Result<VerificationReport> {
    if order < 2 {
        return Err(Error::TruncationTooShort {
            needed: 2,
            got: order,
        });
    }
    let series = fibonacci_base(order).inverse()?;
    let table = FibTable::with_range(0, order as i64);
    let coeffs: Vec<Integer> = series
        .coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();

    let mut outcomes = Vec::with_capacity(2 * (order + 1));
    for (k, c) in coeffs.iter().enumerate() {
        let expected = table.get(k as i64).expect("table covers 0..=order");
        outcomes.push(
            (c != expected).then(|| {
                Counterexample::new(json!({ "k": k, "check": "coefficient" }), c, expected)
            }),
        );

        let relation = match k {
            0 => c - Integer::from(1),
            1 => c - &coeffs[0],
            _ => c - &coeffs[k - 1] - &coeffs[k - 2],
        };
        outcomes.push(
            (relation != Integer::from(0))
                .then(|| Counterexample::new(json!({ "k": k, "check": "relation" }), relation, 0)),
        );
    }
    Ok(VerificationReport::from_outcomes(
        "fib",
        json!({ "order": order }),
        outcomes,
    ))
}
