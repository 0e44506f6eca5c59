//! Exact non-negative rational vertex weights.
//!
//! Weights are parsed from decimal strings (`"2"`, `"0.25"`) or fractions
//! (`"1/3"`) and compared without tolerance. Serialization emits the shortest
//! finite decimal when one exists and falls back to `p/q` otherwise, so every
//! weight round-trips exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("malformed weight `{0}`")]
    Malformed(String),
    #[error("negative weight `{0}`")]
    Negative(String),
}

/// Parses a signed rational literal: `[+-]?digits(.digits)?` or `[+-]?digits/digits`.
pub fn parse_rational(token: &str) -> Result<BigRational, WeightError> {
    let malformed = || WeightError::Malformed(token.to_string());
    let (negative, body) = match token.as_bytes().first() {
        Some(b'-') => (true, &token[1..]),
        Some(b'+') => (false, &token[1..]),
        _ => (false, token),
    };
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());

    let value = if let Some((num, den)) = body.split_once('/') {
        if !all_digits(num) || !all_digits(den) {
            return Err(malformed());
        }
        let den: BigInt = den.parse().map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(malformed());
        }
        BigRational::new(num.parse().map_err(|_| malformed())?, den)
    } else {
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if !all_digits(int_part) || (body.contains('.') && !all_digits(frac_part)) {
            return Err(malformed());
        }
        let digits: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| malformed())?;
        let scale = num_traits::pow(BigInt::from(10u32), frac_part.len());
        BigRational::new(digits, scale)
    };
    Ok(if negative { -value } else { value })
}

/// Formats a rational as a finite decimal when possible, else as `p/q`.
pub fn format_rational(value: &BigRational) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    let mut den = value.denom().clone();
    let (two, five) = (BigInt::from(2u32), BigInt::from(5u32));
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if den != BigInt::from(1u32) {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let places = twos.max(fives);
    let scaled = value * BigRational::from_integer(num_traits::pow(BigInt::from(10u32), places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let sign = if value.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{}", frac_part.trim_end_matches('0'))
}

/// A vertex weight: an exact rational `>= 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(BigRational);

impl Weight {
    pub fn new(value: BigRational) -> Result<Self, WeightError> {
        if value.is_negative() {
            Err(WeightError::Negative(format_rational(&value)))
        } else {
            Ok(Weight(value))
        }
    }

    pub fn zero() -> Self {
        Weight(BigRational::zero())
    }

    pub fn from_integer(value: u64) -> Self {
        Weight(BigRational::from_integer(value.into()))
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn from_ratio(numer: u64, denom: u64) -> Self {
        Weight(BigRational::new(numer.into(), denom.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    /// Lossy conversion for display purposes only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl FromStr for Weight {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value = parse_rational(s)?;
        if value.is_negative() {
            return Err(WeightError::Negative(s.to_string()));
        }
        Ok(Weight(value))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn decimal_sums_are_exact() {
        let tenth = w("0.1");
        let sum = tenth.value() + tenth.value() + tenth.value();
        assert_eq!(sum, *w("0.3").value());
    }

    #[test]
    fn accepts_integers_decimals_and_fractions() {
        assert_eq!(w("2"), Weight::from_integer(2));
        assert_eq!(w("0.25"), Weight::from_ratio(1, 4));
        assert_eq!(w("2/6"), Weight::from_ratio(1, 3));
        assert_eq!(w("+1.50"), Weight::from_ratio(3, 2));
        assert_eq!(w("-0"), Weight::zero());
    }

    #[test]
    fn rejects_bad_tokens() {
        for bad in ["", "1.", ".5", "1e3", "abc", "1/0", "1/-2", "--1", "1.2.3", " 1"] {
            assert_eq!(
                bad.parse::<Weight>(),
                Err(WeightError::Malformed(bad.to_string())),
                "{bad:?}"
            );
        }
        assert_eq!("-1".parse::<Weight>(), Err(WeightError::Negative("-1".into())));
        assert!(matches!("-0.5".parse::<Weight>(), Err(WeightError::Negative(_))));
    }

    #[test]
    fn formatting_is_canonical() {
        assert_eq!(w("1.500").to_string(), "1.5");
        assert_eq!(w("0.05").to_string(), "0.05");
        assert_eq!(w("3/8").to_string(), "0.375");
        assert_eq!(w("1/3").to_string(), "1/3");
        assert_eq!(w("10").to_string(), "10");
        assert_eq!(format_rational(&parse_rational("-0.25").unwrap()), "-0.25");
        assert_eq!(format_rational(&parse_rational("-7/3").unwrap()), "-7/3");
    }

    #[test]
    fn ordering_is_exact() {
        assert!(w("0.1") < w("1/9"));
        assert!(w("1/3") < w("0.3334"));
        assert!(w("1/3") > w("0.3333"));
    }
}
