//! Lossless text forms: integers as decimal strings, rationals as
//! `numerator/denominator` with `/1` elided, series as JSON arrays of
//! coefficient strings ordered by power of `t`.

use std::str::FromStr;

use num_traits::Zero;
use serde_json::Value;

use super::{Coefficient, Integer, Rational, Series};
use crate::error::{Error, Result};

pub fn integer_to_string(value: &Integer) -> String {
    value.to_string()
}

pub fn parse_integer(input: &str) -> Result<Integer> {
    Integer::from_str(input).map_err(|_| Error::Parse {
        kind: "integer",
        input: input.to_owned(),
    })
}

pub fn rational_to_string(value: &Rational) -> String {
    if value.denom() == &Integer::from(1) {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = || Error::Parse {
        kind: "rational",
        input: input.to_owned(),
    };
    match input.split_once('/') {
        None => parse_integer(input)
            .map(Rational::from_integer)
            .map_err(|_| err()),
        Some((n, d)) => {
            let n = parse_integer(n).map_err(|_| err())?;
            let d = parse_integer(d).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub fn series_to_json<C: Coefficient>(series: &Series<C>) -> Value {
    Value::Array(
        series
            .coeffs()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

/// Inverse of [`series_to_json`] for rational coefficients; the order is the
/// array length minus one.
pub fn series_from_json(value: &Value) -> Result<Series<Rational>> {
    let bad = || Error::Parse {
        kind: "series",
        input: value.to_string(),
    };
    let items = value.as_array().filter(|a| !a.is_empty()).ok_or_else(bad)?;
    let coeffs = items
        .iter()
        .map(|v| v.as_str().ok_or_else(bad).and_then(parse_rational))
        .collect::<Result<Vec<_>>>()?;
    let order = coeffs.len() - 1;
    Ok(Series::new(coeffs, order))
}
