//! Exact numeric values written on balls.
//!
//! Values are parsed from decimal or fractional strings into big rationals so
//! that grouping balls by value, and comparing statistic values against an
//! observed one, never depends on binary floating point.

use std::fmt;
use std::str::FromStr;

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::UrnError;

/// Largest decimal exponent accepted by the parser.
const MAX_EXPONENT: i64 = 4096;

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(BigRational);

impl Value {
    pub fn new(r: BigRational) -> Self {
        Value(r)
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Value(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn zero() -> Self {
        Value(BigRational::zero())
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Value {
        Value(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<BigRational> for Value {
    fn from(r: BigRational) -> Self {
        Value(r)
    }
}

fn invalid(input: &str, reason: &str) -> UrnError {
    UrnError::InvalidValue {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_int(input: &str, digits: &str) -> Result<BigInt, UrnError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(invalid(input, "expected decimal digits"));
    }
    digits
        .parse::<BigInt>()
        .map_err(|e| invalid(input, &e.to_string()))
}

impl FromStr for Value {
    type Err = UrnError;

    /// Accepts integers (`-3`), decimals (`0.25`, `.5`), scientific notation
    /// (`1e-9`, `2.5E3`) and fractions (`3/4`).
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s = input.trim();
        if s.is_empty() {
            return Err(invalid(input, "empty string"));
        }
        let (negative, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };

        let magnitude = if let Some((num, den)) = body.split_once('/') {
            let num = parse_int(input, num.trim())?;
            let den = parse_int(input, den.trim())?;
            if den.is_zero() {
                return Err(invalid(input, "zero denominator"));
            }
            BigRational::new(num, den)
        } else {
            let (mantissa, exponent) = match body.find(['e', 'E']) {
                Some(pos) => {
                    let exp: i64 = body[pos + 1..]
                        .parse()
                        .map_err(|_| invalid(input, "bad exponent"))?;
                    if exp.abs() > MAX_EXPONENT {
                        return Err(invalid(input, "exponent too large"));
                    }
                    (&body[..pos], exp)
                }
                None => (body, 0),
            };
            let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
            if int_part.is_empty() && frac_part.is_empty() {
                return Err(invalid(input, "no digits"));
            }
            let digits = format!("{int_part}{frac_part}");
            let numer = parse_int(input, &digits)?;
            let scale = exponent - frac_part.len() as i64;
            let ten = BigInt::from(10u32);
            if scale >= 0 {
                BigRational::from_integer(numer * num::pow(ten, scale as usize))
            } else {
                BigRational::new(numer, num::pow(ten, (-scale) as usize))
            }
        };
        Ok(Value(if negative { -magnitude } else { magnitude }))
    }
}

impl fmt::Display for Value {
    /// Integers print bare, terminating fractions as exact decimals, and
    /// everything else as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.0;
        if r.is_integer() {
            return write!(f, "{}", r.numer());
        }
        let mut den = r.denom().clone();
        let (two, five) = (BigInt::from(2u32), BigInt::from(5u32));
        let mut twos = 0usize;
        let mut fives = 0usize;
        while (&den % &two).is_zero() {
            den /= &two;
            twos += 1;
        }
        while (&den % &five).is_zero() {
            den /= &five;
            fives += 1;
        }
        if !den.is_one() {
            return write!(f, "{}/{}", r.numer(), r.denom());
        }
        let places = twos.max(fives);
        let scaled = (r.abs() * BigRational::from_integer(num::pow(BigInt::from(10u32), places)))
            .to_integer()
            .to_string();
        let padded = format!("{scaled:0>width$}", width = places + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - places);
        let sign = if r.numer().sign() == Sign::Minus {
            "-"
        } else {
            ""
        };
        write!(f, "{sign}{int_part}.{frac_part}")
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Value({self})")
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
