//! Exact convolved Fibonacci numbers.
//!
//! The convolved Fibonacci numbers `p_n(x)` are the exponential-generating
//! coefficients of `(1 - t - t^2)^(-x)`, with Fibonacci numbers indexed so
//! that `F_0 = F_1 = 1`. This crate provides:
//!
//! - [`exact`]: big integers, rationals, polynomials in `x` and truncated
//!   power series in `t`
//! - [`fibonacci`]: `F_n` for signed `n`, memoized or table-free
//! - [`convolved`]: `p_n(r)` for integer `r`, the coefficient triangle
//!   `a_i(N)` and `p_N(x)` as a polynomial
//! - [`identities`]: grid checkers that compare two independently computed
//!   sides of each identity exactly
//! - [`bench`]: timing of competing algorithms behind a correctness gate
//! - [`cli`]: the `convfib` command line

pub mod bench;
pub mod cli;
pub mod convolved;
pub mod error;
pub mod exact;
pub mod fibonacci;
pub mod identities;

pub use error::{Error, Result};
pub use exact::{Coefficient, Integer, Poly, Rational, Series};
