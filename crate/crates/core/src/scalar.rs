//! Exact rational scalars.
//!
//! Every matrix entry, structure constant and weight in the crate is a
//! [`Scalar`]. The textual form is `p/q` (or `p` for integers), which is also
//! what the JSON interfaces use.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `(-1)^exponent`.
pub fn sign(exponent: usize) -> Scalar {
    if exponent.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

/// `base^exponent` for a non-negative exponent.
pub fn pow(base: &Scalar, exponent: usize) -> Scalar {
    let mut acc = one();
    for _ in 0..exponent {
        acc *= base;
    }
    acc
}

/// Parses `p/q`, `p`, or a negative variant of either.
pub fn parse(text: &str) -> Result<Scalar> {
    let trimmed = text.trim();
    let value = Scalar::from_str(trimmed).map_err(|_| Error::Parse(format!("bad rational {text:?}")))?;
    Ok(value)
}

/// Canonical `p/q` text; integers print without a denominator.
pub fn format(value: &Scalar) -> String {
    value.to_string()
}

pub fn is_integer(value: &Scalar) -> bool {
    value.is_integer()
}

pub fn to_i64(value: &Scalar) -> Option<i64> {
    if !value.is_integer() {
        return None;
    }
    let numer = value.numer();
    if numer.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    numer.to_string().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for text in ["0", "1", "-3", "7/2", "-5/3"] {
            assert_eq!(format(&parse(text).unwrap()), text);
        }
        assert_eq!(format(&parse("4/2").unwrap()), "2");
        assert!(parse("1/0x").is_err());
    }

    #[test]
    fn canonical_form_is_reduced() {
        let value = parse("6/-4").unwrap_or_else(|_| int(-3) / int(2));
        assert_eq!(value, int(-3) / int(2));
        assert!(value.denom() > &BigInt::zero());
    }

    #[test]
    fn powers_and_signs() {
        assert_eq!(pow(&int(-2), 3), int(-8));
        assert_eq!(pow(&int(5), 0), one());
        assert_eq!(sign(3), int(-1));
        assert_eq!(to_i64(&int(-7)), Some(-7));
        assert_eq!(to_i64(&parse("1/2").unwrap()), None);
    }
}
