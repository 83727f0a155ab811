//! Grid checks of the convolved-Fibonacci identities.
//!
//! Every checker computes both sides of its identity independently and
//! compares them exactly. Grid cells are independent and run on the current
//! rayon pool; reports always name the first failing cell in the grid's
//! lexicographic parameter order.

mod nested;
mod report;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

pub use nested::{nested_binomial_sum, nested_fib_sum, p_at_one, pascal};
pub use report::{check_cells, Counterexample, Status, VerificationReport};

use crate::convolved::{
    conv_fib_row, factorial, factorial_powers, rising_factorial, symbolic_generating_series,
    CoeffTriangle, RisingFactorialPoly,
};
use crate::error::{Error, Result};
use crate::exact::{Integer, Poly, Rational, Series};
use crate::fibonacci::{fib_genfun_check, fibonacci_base, FibTable};

/// Precomputed `p_n(r)` for `r` in `r_lo ..= r_hi` and `n <= n_max`, one
/// series power per row.
pub struct ValueTable {
    r_lo: i64,
    rows: Vec<Vec<Integer>>,
}

impl ValueTable {
    pub fn new(r_lo: i64, r_hi: i64, n_max: usize) -> Self {
        let rows = (r_lo..=r_hi)
            .into_par_iter()
            .map(|r| conv_fib_row(r, n_max))
            .collect();
        ValueTable { r_lo, rows }
    }

    /// `p_n(r)`; panics outside the precomputed range.
    pub fn p(&self, n: usize, r: i64) -> &Integer {
        &self.rows[(r - self.r_lo) as usize][n]
    }
}

fn span(xs: &[i64]) -> (i64, i64) {
    let lo = xs.iter().copied().min().unwrap_or(0);
    let hi = xs.iter().copied().max().unwrap_or(0);
    (lo, hi)
}

/// `p_n(x) = sum_l binom(n,l) p_l(1) p_{n-l}(x-1)`.
pub fn verify_prop1(n_max: usize, x_set: &[i64]) -> VerificationReport {
    let (lo, hi) = span(x_set);
    let table = ValueTable::new((lo - 1).min(1), hi.max(1), n_max);
    let binom = pascal(n_max);
    let cells: Vec<(usize, i64)> = (0..=n_max)
        .flat_map(|n| x_set.iter().map(move |&x| (n, x)))
        .collect();
    check_cells(
        "prop1",
        json!({ "n_max": n_max, "x": x_set }),
        cells,
        |&(n, x)| {
            let lhs = table.p(n, x);
            let rhs: Integer = (0..=n)
                .map(|l| &binom[n][l] * table.p(l, 1) * table.p(n - l, x - 1))
                .sum();
            (lhs != &rhs).then(|| Counterexample::new(json!({ "n": n, "x": x }), lhs, rhs))
        },
    )
}

/// `p_n(r)` against the `(r-1)`-fold nested sum of binomials and `p_l(1) = l! F_l`.
pub fn verify_cor2(n_max: usize, r_max: u32) -> VerificationReport {
    let table = ValueTable::new(1, r_max.max(1) as i64, n_max);
    let fibs = FibTable::with_range(0, n_max as i64);
    let p1 = p_at_one(n_max, &fibs);
    let binom = pascal(n_max);
    let cells: Vec<(usize, u32)> = (0..=n_max)
        .flat_map(|n| (1..=r_max).map(move |r| (n, r)))
        .collect();
    check_cells(
        "cor2",
        json!({ "n_max": n_max, "r_max": r_max }),
        cells,
        |&(n, r)| {
            let lhs = table.p(n, r as i64);
            let rhs = nested_binomial_sum(n, r, &p1, &binom);
            (lhs != &rhs).then(|| Counterexample::new(json!({ "n": n, "r": r }), lhs, rhs))
        },
    )
}

/// `p_n(x) = sum_l binom(n,l) p_l(r) p_{n-l}(x-r) = sum_l binom(n,l) p_{n-l}(r) p_l(x-r)`.
pub fn verify_thm3(n_max: usize, r_max: u32, x_set: &[i64]) -> VerificationReport {
    let (lo, hi) = span(x_set);
    let table = ValueTable::new((lo - r_max as i64).min(1), hi.max(r_max as i64), n_max);
    let binom = pascal(n_max);
    let mut cells = Vec::new();
    for n in 0..=n_max {
        for r in 1..=r_max as i64 {
            for &x in x_set {
                for form in [1u8, 2] {
                    cells.push((n, r, x, form));
                }
            }
        }
    }
    check_cells(
        "thm3",
        json!({ "n_max": n_max, "r_max": r_max, "x": x_set }),
        cells,
        |&(n, r, x, form)| {
            let lhs = table.p(n, x);
            let rhs: Integer = (0..=n)
                .map(|l| {
                    let (a, b) = if form == 1 { (l, n - l) } else { (n - l, l) };
                    &binom[n][l] * table.p(a, r) * table.p(b, x - r)
                })
                .sum();
            (lhs != &rhs).then(|| {
                Counterexample::new(json!({ "n": n, "r": r, "x": x, "form": form }), lhs, rhs)
            })
        },
    )
}

/// `p_n(r+1) = sum_l (n)_l p_{n-l}(r) F_l`.
pub fn verify_cor4(n_max: usize, r_max: u32) -> VerificationReport {
    let table = ValueTable::new(1, r_max as i64 + 1, n_max);
    let fibs = FibTable::with_range(0, n_max as i64);
    let cells: Vec<(usize, u32)> = (0..=n_max)
        .flat_map(|n| (1..=r_max).map(move |r| (n, r)))
        .collect();
    check_cells(
        "cor4",
        json!({ "n_max": n_max, "r_max": r_max }),
        cells,
        |&(n, r)| {
            let r = r as i64;
            let lhs = table.p(n, r + 1);
            let rhs: Integer = (0..=n)
                .map(|l| {
                    let (falling, _) = factorial_powers(n as i64, l as u64);
                    falling * table.p(n - l, r) * fibs.get(l as i64).expect("covered")
                })
                .sum();
            (lhs != &rhs).then(|| Counterexample::new(json!({ "n": n, "r": r }), lhs, rhs))
        },
    )
}

/// `p_n(r+1) / n!` against the `r`-fold nested Fibonacci sum.
pub fn verify_thm5(n_max: usize, r_max: u32) -> VerificationReport {
    let table = ValueTable::new(1, r_max as i64 + 1, n_max);
    let fibs = FibTable::with_range(0, n_max as i64);
    let cells: Vec<(usize, u32)> = (0..=n_max)
        .flat_map(|n| (1..=r_max).map(move |r| (n, r)))
        .collect();
    check_cells(
        "thm5",
        json!({ "n_max": n_max, "r_max": r_max }),
        cells,
        |&(n, r)| {
            let lhs = Rational::new(table.p(n, r as i64 + 1).clone(), factorial(n as u64));
            let rhs = Rational::from_integer(nested_fib_sum(n, r, &fibs));
            (lhs != rhs).then(|| Counterexample::new(json!({ "n": n, "r": r }), lhs, rhs))
        },
    )
}

fn require_rows(triangle: &CoeffTriangle, n_max: usize) -> Result<()> {
    if triangle.n_max() < n_max {
        return Err(Error::IndexOutOfTriangle { n: n_max, i: 0 });
    }
    Ok(())
}

/// Right side of the order-`n` equation, without the trailing `F(t,x)`:
/// `sum_i a_i(N) <x>_{N-i} (1+2t)^{N-2i} (1-t-t^2)^{-N+i}`.
fn ode_multiplier(row: &[Integer], n: usize, order: usize) -> Result<Series<Poly>> {
    let lin = Series::from_ints(&[1, 2], order);
    let base_inv = fibonacci_base(order).inverse()?;
    let mut total = Series::<Poly>::zero(order);
    for (i, a) in row.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let rational_part = lin
            .pow(n as i64 - 2 * i as i64)?
            .mul(&base_inv.pow((n - i) as i64)?);
        let poly_factor = crate::convolved::rising_factorial_poly((n - i) as u64)
            .scale(&Rational::from_integer(a.clone()));
        total = total.add(&rational_part.map(|c| poly_factor.scale(c)));
    }
    Ok(total)
}

/// `(d/dt)^N F = (sum_i a_i(N) <x>_{N-i} (1+2t)^{N-2i} (1-t-t^2)^{-N+i}) F`
/// with `F = (1-t-t^2)^(-x)` as a series with coefficients in `Q[x]`,
/// compared through `t^(order - N)`.
pub fn verify_thm6(n_max: usize, order: usize) -> Result<VerificationReport> {
    verify_thm6_with(&CoeffTriangle::by_recurrence(n_max), n_max, order)
}

pub fn verify_thm6_with(
    triangle: &CoeffTriangle,
    n_max: usize,
    order: usize,
) -> Result<VerificationReport> {
    if order < n_max {
        return Err(Error::TruncationTooShort {
            needed: n_max,
            got: order,
        });
    }
    require_rows(triangle, n_max)?;
    let f = symbolic_generating_series(order);
    let mut derivatives = vec![f.clone()];
    for _ in 0..n_max {
        let next = derivatives.last().expect("nonempty").derivative()?;
        derivatives.push(next);
    }
    let per_row: Vec<Result<Vec<Option<Counterexample>>>> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let row = triangle.row(n).expect("checked above");
            let rhs = ode_multiplier(row, n, order)?.mul(&f);
            let lhs = &derivatives[n];
            Ok(lhs
                .coeffs()
                .iter()
                .zip(rhs.coeffs())
                .enumerate()
                .map(|(k, (l, r))| {
                    (l != r).then(|| Counterexample::new(json!({ "N": n, "k": k }), l, r))
                })
                .collect())
        })
        .collect();
    let mut outcomes = Vec::new();
    for row in per_row {
        outcomes.extend(row?);
    }
    Ok(VerificationReport::from_outcomes(
        "thm6",
        json!({ "N_max": n_max, "order": order }),
        outcomes,
    ))
}

/// `p_{k+N}(x) = sum_i sum_l binom(k,l) (N-2i)_l 2^l a_i(N) <x>_{N-i} p_{k-l}(x+N-i)`.
pub fn verify_thm7(k_max: usize, n_max: usize, x_set: &[i64]) -> Result<VerificationReport> {
    verify_thm7_with(&CoeffTriangle::by_recurrence(n_max), k_max, n_max, x_set)
}

pub fn verify_thm7_with(
    triangle: &CoeffTriangle,
    k_max: usize,
    n_max: usize,
    x_set: &[i64],
) -> Result<VerificationReport> {
    require_rows(triangle, n_max)?;
    let (lo, hi) = span(x_set);
    let table = ValueTable::new(lo, hi + n_max as i64, k_max + n_max);
    let binom = pascal(k_max);
    let mut cells = Vec::new();
    for k in 0..=k_max {
        for n in 0..=n_max {
            for &x in x_set {
                cells.push((k, n, x));
            }
        }
    }
    Ok(check_cells(
        "thm7",
        json!({ "k_max": k_max, "N_max": n_max, "x": x_set }),
        cells,
        |&(k, n, x)| {
            let lhs = table.p(k + n, x);
            let row = triangle.row(n).expect("checked above");
            let mut rhs = Integer::zero();
            for (i, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let rising = rising_factorial(&Integer::from(x), (n - i) as u64);
                let shift = x + (n - i) as i64;
                for (l, b) in binom[k].iter().enumerate() {
                    let (falling, _) = factorial_powers(n as i64 - 2 * i as i64, l as u64);
                    rhs +=
                        b * falling * (Integer::one() << l) * a * &rising * table.p(k - l, shift);
                }
            }
            (lhs != &rhs).then(|| Counterexample::new(json!({ "k": k, "N": n, "x": x }), lhs, rhs))
        },
    ))
}

#[derive(Clone, Copy)]
enum Cor8Cell {
    Eval(usize, i64),
    Oracle(usize),
}

/// `p_N(x) = sum_i a_i(N) <x>_{N-i}`: the expanded polynomial evaluated at
/// each integer `x` against the series power, and the whole polynomial
/// against the `exp(x log)` construction.
pub fn verify_cor8(n_max: usize, x_set: &[i64]) -> Result<VerificationReport> {
    verify_cor8_with(&CoeffTriangle::by_recurrence(n_max), n_max, x_set)
}

pub fn verify_cor8_with(
    triangle: &CoeffTriangle,
    n_max: usize,
    x_set: &[i64],
) -> Result<VerificationReport> {
    require_rows(triangle, n_max)?;
    let (lo, hi) = span(x_set);
    let table = ValueTable::new(lo, hi, n_max);
    let polys = (0..=n_max)
        .map(|n| RisingFactorialPoly::from_triangle(triangle, n))
        .collect::<Result<Vec<_>>>()?;
    let symbolic = symbolic_generating_series(n_max);
    let mut cells = Vec::new();
    for n in 0..=n_max {
        cells.extend(x_set.iter().map(|&x| Cor8Cell::Eval(n, x)));
        cells.push(Cor8Cell::Oracle(n));
    }
    Ok(check_cells(
        "cor8",
        json!({ "N_max": n_max, "x": x_set }),
        cells,
        |&cell| match cell {
            Cor8Cell::Eval(n, x) => {
                let lhs = polys[n].eval(&Rational::from_integer(x.into()));
                let rhs = Rational::from_integer(table.p(n, x).clone());
                (lhs != rhs).then(|| Counterexample::new(json!({ "N": n, "x": x }), lhs, rhs))
            }
            Cor8Cell::Oracle(n) => {
                let lhs = polys[n].monomial();
                let rhs = symbolic
                    .coeff(n)
                    .expect("order is N_max")
                    .scale(&Rational::from_integer(factorial(n as u64)));
                (lhs != &rhs)
                    .then(|| Counterexample::new(json!({ "N": n, "check": "oracle" }), lhs, rhs))
            }
        },
    ))
}

/// `N! (F_N - 1) = sum_{i>=1} a_i(N) (N-i)!`, plus `p_N(1) = sum_{i>=0} a_i(N) (N-i)!`
/// with `p_N(1)` from the series power. The default triangle is the closed form.
pub fn verify_cor9(n_max: usize) -> Result<VerificationReport> {
    verify_cor9_with(&CoeffTriangle::by_closed_form(n_max), n_max)
}

pub fn verify_cor9_with(triangle: &CoeffTriangle, n_max: usize) -> Result<VerificationReport> {
    require_rows(triangle, n_max)?;
    let row_one = conv_fib_row(1, n_max);
    let fibs = FibTable::with_range(0, n_max as i64);
    let cells: Vec<(usize, bool)> = (0..=n_max).flat_map(|n| [(n, false), (n, true)]).collect();
    Ok(check_cells(
        "cor9",
        json!({ "N_max": n_max }),
        cells,
        |&(n, with_leading)| {
            let row = triangle.row(n).expect("checked above");
            let skip = if with_leading { 0 } else { 1 };
            let rhs: Integer = row
                .iter()
                .enumerate()
                .skip(skip)
                .map(|(i, a)| a * factorial((n - i) as u64))
                .sum();
            let lhs = if with_leading {
                row_one[n].clone()
            } else {
                factorial(n as u64) * (fibs.get(n as i64).expect("covered") - 1)
            };
            let check = if with_leading { "p_N(1)" } else { "F_N - 1" };
            (lhs != rhs).then(|| Counterexample::new(json!({ "N": n, "check": check }), lhs, rhs))
        },
    ))
}

/// Closed nested-sum form of every `a_i(N)` against the recurrence.
pub fn verify_triangle(n_max: usize) -> VerificationReport {
    let recurrence = CoeffTriangle::by_recurrence(n_max);
    let cells: Vec<(usize, usize, Integer)> = recurrence
        .entries()
        .map(|(n, i, a)| (n, i, a.clone()))
        .collect();
    check_cells("triangle", json!({ "N_max": n_max }), cells, |(n, i, a)| {
        let closed = crate::convolved::triangle_closed(*n, *i).expect("index within row");
        (a != &closed).then(|| Counterexample::new(json!({ "N": n, "i": i }), a, closed))
    })
}

/// Names accepted by [`run`] and the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    Fib,
    Triangle,
    Prop1,
    Cor2,
    Thm3,
    Cor4,
    Thm5,
    Thm6,
    Thm7,
    Cor8,
    Cor9,
}

impl Identity {
    pub const ALL: [Identity; 11] = [
        Identity::Fib,
        Identity::Triangle,
        Identity::Prop1,
        Identity::Cor2,
        Identity::Thm3,
        Identity::Cor4,
        Identity::Thm5,
        Identity::Thm6,
        Identity::Thm7,
        Identity::Cor8,
        Identity::Cor9,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Fib => "fib",
            Identity::Triangle => "triangle",
            Identity::Prop1 => "prop1",
            Identity::Cor2 => "cor2",
            Identity::Thm3 => "thm3",
            Identity::Cor4 => "cor4",
            Identity::Thm5 => "thm5",
            Identity::Thm6 => "thm6",
            Identity::Thm7 => "thm7",
            Identity::Cor8 => "cor8",
            Identity::Cor9 => "cor9",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse {
                kind: "identity",
                input: s.to_owned(),
            })
    }
}

/// Optional grid bounds; anything left `None` takes the identity's default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub n_max: Option<usize>,
    pub r_max: Option<u32>,
    pub big_n_max: Option<usize>,
    pub k_max: Option<usize>,
    pub order: Option<usize>,
    pub x_min: Option<i64>,
    pub x_max: Option<i64>,
}

impl Overrides {
    fn x_set(&self, lo: i64, hi: i64) -> Vec<i64> {
        (self.x_min.unwrap_or(lo)..=self.x_max.unwrap_or(hi)).collect()
    }
}

/// Run one identity on its default grid, adjusted by `overrides`.
pub fn run(identity: Identity, o: &Overrides) -> Result<VerificationReport> {
    match identity {
        Identity::Fib => fib_genfun_check(o.order.unwrap_or(200)),
        Identity::Triangle => Ok(verify_triangle(o.big_n_max.unwrap_or(60))),
        Identity::Prop1 => Ok(verify_prop1(o.n_max.unwrap_or(50), &o.x_set(-3, 8))),
        Identity::Cor2 => Ok(verify_cor2(o.n_max.unwrap_or(20), o.r_max.unwrap_or(4))),
        Identity::Thm3 => Ok(verify_thm3(
            o.n_max.unwrap_or(40),
            o.r_max.unwrap_or(6),
            &o.x_set(-2, 8),
        )),
        Identity::Cor4 => Ok(verify_cor4(o.n_max.unwrap_or(60), o.r_max.unwrap_or(6))),
        Identity::Thm5 => Ok(verify_thm5(o.n_max.unwrap_or(25), o.r_max.unwrap_or(4))),
        Identity::Thm6 => verify_thm6(o.big_n_max.unwrap_or(10), o.order.unwrap_or(30)),
        Identity::Thm7 => verify_thm7(
            o.k_max.unwrap_or(20),
            o.big_n_max.unwrap_or(8),
            &o.x_set(1, 5),
        ),
        Identity::Cor8 => verify_cor8(o.big_n_max.unwrap_or(40), &o.x_set(-5, 10)),
        Identity::Cor9 => verify_cor9(o.big_n_max.unwrap_or(50)),
    }
}

pub fn run_all(o: &Overrides) -> Result<Vec<VerificationReport>> {
    Identity::ALL.into_iter().map(|id| run(id, o)).collect()
}
