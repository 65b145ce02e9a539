//! Exact rational scalars.
//!
//! Every coordinate, coefficient and LP entry is a [`Rational`]. Values are kept
//! in lowest terms with a positive denominator after every operation, so equality
//! is structural and printing is canonical (`p/q`, or a bare integer when `q = 1`).

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a rational (expected `p/q` or an integer)")]
pub struct ParseRationalError {
    pub input: String,
}

/// Parses `p/q` or a bare integer. Signs are allowed on the numerator only and a
/// zero denominator is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError { input: s.to_owned() };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = match den {
        Some(d) if d.starts_with(['+', '-']) => return Err(err()),
        Some(d) => BigInt::from_str(d).map_err(|_| err())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn is_nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}
