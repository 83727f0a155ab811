//! Timing of competing algorithms for the same quantity.
//!
//! Two families are timed:
//!
//! - values: `p_n(r+1)` by the `r`-fold nested Fibonacci sum, by the
//!   falling-factorial recurrence over `r`, and by one series power;
//! - triangle: row `N` of `a_i(N)` by the row recurrence and by the closed
//!   nested-sum form.
//!
//! Every algorithm is run once per cell and compared before any timing
//! starts; a mismatch aborts the whole run.

use std::hint::black_box;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::convolved::{
    conv_fib_int, conv_fib_rows_by_recurrence, factorial, row_width, triangle_closed, CoeffTriangle,
};
use crate::exact::Integer;
use crate::fibonacci::FibTable;
use crate::identities::nested_fib_sum;

pub const NESTED_SUM: &str = "nested-sum";
pub const FALLING_RECURRENCE: &str = "falling-recurrence";
pub const SERIES_POWER: &str = "series-power";
pub const TRIANGLE_RECURRENCE: &str = "triangle-recurrence";
pub const TRIANGLE_CLOSED: &str = "triangle-closed";

#[derive(Clone, Debug)]
pub struct BenchGrid {
    /// `n` for the value family.
    pub n_values: Vec<usize>,
    /// Fold count `r` for the value family; each cell computes `p_n(r+1)`.
    pub r_values: Vec<u32>,
    /// Row index `N` for the triangle family.
    pub triangle_rows: Vec<usize>,
    pub samples: usize,
    pub min_sample: Duration,
}

impl Default for BenchGrid {
    fn default() -> Self {
        BenchGrid {
            n_values: vec![10, 20],
            r_values: vec![1, 2, 3, 4],
            triangle_rows: vec![20, 40],
            samples: 5,
            min_sample: Duration::from_millis(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub algorithm: &'static str,
    pub n: usize,
    /// Fold count; `None` for triangle rows.
    pub r: Option<u32>,
    /// Median wall time of one run.
    pub nanos: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("{algorithm} disagrees with {reference} at n = {n}, r = {r:?}")]
    CrossCheck {
        algorithm: &'static str,
        reference: &'static str,
        n: usize,
        r: Option<u32>,
    },
}

type ValueAlgorithm = (&'static str, fn(usize, u32) -> Integer);
type TriangleAlgorithm = (&'static str, fn(usize) -> Vec<Integer>);

fn value_algorithms() -> [ValueAlgorithm; 3] {
    [
        (NESTED_SUM, |n, r| {
            let fibs = FibTable::with_range(0, n as i64);
            factorial(n as u64) * nested_fib_sum(n, r, &fibs)
        }),
        (FALLING_RECURRENCE, |n, r| {
            let mut rows = conv_fib_rows_by_recurrence(r + 1, n);
            rows.pop().expect("r + 1 rows").swap_remove(n)
        }),
        (SERIES_POWER, |n, r| conv_fib_int(n, r as i64 + 1)),
    ]
}

fn triangle_algorithms() -> [TriangleAlgorithm; 2] {
    [
        (TRIANGLE_RECURRENCE, |n| {
            CoeffTriangle::by_recurrence(n)
                .row(n)
                .expect("row n")
                .to_vec()
        }),
        (TRIANGLE_CLOSED, |n| {
            (0..row_width(n))
                .map(|i| triangle_closed(n, i).expect("index within row"))
                .collect()
        }),
    ]
}

/// Check every cell, then time every (algorithm, cell) pair.
pub fn run(grid: &BenchGrid) -> Result<Vec<BenchRow>, BenchError> {
    let value_cells: Vec<(usize, u32)> = grid
        .n_values
        .iter()
        .flat_map(|&n| grid.r_values.iter().map(move |&r| (n, r)))
        .collect();

    for &(n, r) in &value_cells {
        let [(reference, first), rest @ ..] = value_algorithms();
        let expected = first(n, r);
        for (algorithm, f) in rest {
            if f(n, r) != expected {
                return Err(BenchError::CrossCheck {
                    algorithm,
                    reference,
                    n,
                    r: Some(r),
                });
            }
        }
    }
    for &n in &grid.triangle_rows {
        let [(reference, first), (algorithm, second)] = triangle_algorithms();
        if first(n) != second(n) {
            return Err(BenchError::CrossCheck {
                algorithm,
                reference,
                n,
                r: None,
            });
        }
    }

    let mut rows = Vec::new();
    for &(n, r) in &value_cells {
        for (algorithm, f) in value_algorithms() {
            let nanos = median_nanos(grid, || {
                black_box(f(black_box(n), black_box(r)));
            });
            rows.push(BenchRow {
                algorithm,
                n,
                r: Some(r),
                nanos,
            });
        }
    }
    for &n in &grid.triangle_rows {
        for (algorithm, f) in triangle_algorithms() {
            let nanos = median_nanos(grid, || {
                black_box(f(black_box(n)));
            });
            rows.push(BenchRow {
                algorithm,
                n,
                r: None,
                nanos,
            });
        }
    }
    Ok(rows)
}

/// Median over `grid.samples` batches, each long enough to cover
/// `grid.min_sample`.
fn median_nanos(grid: &BenchGrid, mut f: impl FnMut()) -> u128 {
    let start = Instant::now();
    f();
    let once = start.elapsed().max(Duration::from_nanos(1));
    let iters = (grid.min_sample.as_nanos() / once.as_nanos()).clamp(1, 1_000_000) as u32;

    let mut per_iter: Vec<u128> = (0..grid.samples.max(1))
        .map(|_| {
            let start = Instant::now();
            for _ in 0..iters {
                f();
            }
            start.elapsed().as_nanos() / iters as u128
        })
        .collect();
    per_iter.sort_unstable();
    per_iter[per_iter.len() / 2]
}

pub const CSV_HEADER: &str = "algorithm,n,r,nanos";

pub fn csv_line(row: &BenchRow) -> String {
    let r = row.r.map(|r| r.to_string()).unwrap_or_default();
    format!("{},{},{},{}", row.algorithm, row.n, r, row.nanos)
}
