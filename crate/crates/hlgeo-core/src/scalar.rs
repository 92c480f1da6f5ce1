//! Scalar abstraction shared by the exact (rational) and floating-point
//! computation paths.
//!
//! Catalog geometry is computed end to end in arbitrary-precision rationals;
//! `f64` enters only through the geodesic integrator. Everything generic over
//! [`Scalar`] works for both.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (maintained by `num-rational`).
pub type Rational = num_rational::BigRational;

/// Field element usable in the tensor algebra.
///
/// Implemented by [`Rational`] (exact path) and `f64` (integrator path).
pub trait Scalar:
    Clone + PartialEq + PartialOrd + fmt::Debug + fmt::Display + Signed + 'static
{
    /// The scalar `n / d`. Panics if `d == 0`.
    fn from_ratio(n: i64, d: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
}

impl Scalar for Rational {
    fn from_ratio(n: i64, d: i64) -> Self {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }
}

impl Scalar for f64 {
    fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        n as f64 / d as f64
    }
}

/// Shorthand for `Rational::from_ratio`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

/// Shorthand for an integer `Rational`.
pub fn rint(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("invalid rational `{0}`: expected `p` or `p/q` with integer p, q")]
    Malformed(String),
    #[error("invalid rational `{0}`: zero denominator")]
    ZeroDenominator(String),
    #[error("non-canonical rational `{0}`: canonical form is `{1}`")]
    NonCanonical(String, String),
}

/// Parses the wire format for exact scalars: `"p"` or `"p/q"`.
///
/// Input must already be in canonical form (lowest terms, positive
/// denominator, no leading `+` or zeros), so that serialization round-trips
/// byte for byte.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let parse_int = |t: &str| -> Option<BigInt> {
        let ok = match t.strip_prefix('-') {
            Some(rest) => !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()),
            None => !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()),
        };
        if ok {
            t.parse().ok()
        } else {
            None
        }
    };
    let value = match s.split_once('/') {
        None => {
            let n = parse_int(s).ok_or_else(|| RationalParseError::Malformed(s.into()))?;
            Rational::from_integer(n)
        }
        Some((ns, ds)) => {
            let n = parse_int(ns).ok_or_else(|| RationalParseError::Malformed(s.into()))?;
            let d = parse_int(ds).ok_or_else(|| RationalParseError::Malformed(s.into()))?;
            if d == BigInt::from(0) {
                return Err(RationalParseError::ZeroDenominator(s.into()));
            }
            Rational::new(n, d)
        }
    };
    let canonical = format_rational(&value);
    if canonical != s {
        return Err(RationalParseError::NonCanonical(s.into(), canonical));
    }
    Ok(value)
}

/// Canonical string form of a rational: `"p"` for integers, else `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_canonical_forms() {
        assert_eq!(parse_rational("3").unwrap(), rint(3));
        assert_eq!(parse_rational("-3").unwrap(), rint(-3));
        assert_eq!(parse_rational("2/3").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("0").unwrap(), rint(0));
    }

    #[test]
    fn reject_non_canonical() {
        for s in ["2/4", "1/-2", "-2/-4", "+3", "03", "4/2", "0/5", "", "/", "1/", "a"] {
            assert!(parse_rational(s).is_err(), "accepted `{s}`");
        }
        assert!(matches!(
            parse_rational("2/4"),
            Err(RationalParseError::NonCanonical(_, _))
        ));
        assert!(matches!(
            parse_rational("1/0"),
            Err(RationalParseError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn format_round_trip() {
        for r in [rat(2, 3), rint(-7), rat(-5, 9), rint(0)] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
