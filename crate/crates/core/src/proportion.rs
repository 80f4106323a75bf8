//! Exact proportions of equally likely outcomes.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::{BigInt, BigUint};
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::UrnError;
use crate::value::Value;

/// A reduced rational in `[0, 1]` obtained by counting qualifying outcomes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactProportion {
    numer: BigUint,
    denom: BigUint,
}

impl ExactProportion {
    /// `hits / total`, reduced. Fails unless `0 <= hits <= total` and `total > 0`.
    pub fn from_counts(hits: &BigUint, total: &BigUint) -> Result<Self, UrnError> {
        if total.is_zero() {
            return Err(UrnError::InconsistentCounts(
                "proportion over an empty outcome space".into(),
            ));
        }
        if hits > total {
            return Err(UrnError::InconsistentCounts(format!(
                "{hits} qualifying outcomes out of {total}"
            )));
        }
        let g = hits.gcd(total);
        let g = if g.is_zero() { BigUint::one() } else { g };
        Ok(ExactProportion {
            numer: hits / &g,
            denom: total / &g,
        })
    }

    pub fn from_u64(hits: u64, total: u64) -> Result<Self, UrnError> {
        Self::from_counts(&BigUint::from(hits), &BigUint::from(total))
    }

    pub fn zero() -> Self {
        ExactProportion {
            numer: BigUint::zero(),
            denom: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        ExactProportion {
            numer: BigUint::one(),
            denom: BigUint::one(),
        }
    }

    pub fn numer(&self) -> &BigUint {
        &self.numer
    }

    pub fn denom(&self) -> &BigUint {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numer.clone()),
            BigInt::from(self.denom.clone()),
        )
    }

    pub fn to_value(&self) -> Value {
        Value::new(self.to_rational())
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Number of qualifying outcomes when the proportion is taken over a
    /// space of `space_size` outcomes; `None` if that count is not an integer.
    pub fn count_in(&self, space_size: &BigUint) -> Option<BigUint> {
        let scaled = &self.numer * space_size;
        let (q, r) = scaled.div_rem(&self.denom);
        r.is_zero().then_some(q)
    }

    /// Sum of two proportions of the same outcome space, when the sum stays
    /// a proportion.
    pub fn checked_add(&self, other: &ExactProportion) -> Option<ExactProportion> {
        let numer = &self.numer * &other.denom + &other.numer * &self.denom;
        let denom = &self.denom * &other.denom;
        ExactProportion::from_counts(&numer, &denom).ok()
    }

    /// Decimal rendering with round-half-even at `places` digits.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = num::pow(BigUint::from(10u32), places);
        let (mut q, r) = (&self.numer * &scale).div_rem(&self.denom);
        let twice = r * 2u32;
        if twice > self.denom || (twice == self.denom && q.is_odd()) {
            q += 1u32;
        }
        if places == 0 {
            return q.to_string();
        }
        let digits = format!("{q:0>width$}", width = places + 1);
        let (int_part, frac_part) = digits.split_at(digits.len() - places);
        format!("{int_part}.{frac_part}")
    }
}

impl Ord for ExactProportion {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

impl PartialOrd for ExactProportion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<&Value> for ExactProportion {
    type Error = UrnError;

    fn try_from(v: &Value) -> Result<Self, UrnError> {
        let r = v.as_rational();
        let (numer, denom) = (r.numer().to_biguint(), r.denom().to_biguint());
        match (numer, denom) {
            (Some(n), Some(d)) => ExactProportion::from_counts(&n, &d),
            _ => Err(UrnError::InconsistentCounts(format!(
                "{v} is not a proportion in [0, 1]"
            ))),
        }
    }
}

impl fmt::Display for ExactProportion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

impl fmt::Debug for ExactProportion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactProportion({}/{})", self.numer, self.denom)
    }
}

/// JSON form: exact numerator and denominator as decimal strings plus a
/// rounded decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProportionJson {
    pub num: String,
    pub den: String,
    pub decimal: String,
}

impl ProportionJson {
    pub fn new(p: &ExactProportion, places: usize) -> Self {
        ProportionJson {
            num: p.numer.to_string(),
            den: p.denom.to_string(),
            decimal: p.to_decimal(places),
        }
    }

    pub fn to_exact(&self) -> Result<ExactProportion, UrnError> {
        let parse = |s: &str| {
            s.parse::<BigUint>().map_err(|e| UrnError::InvalidValue {
                input: s.to_string(),
                reason: e.to_string(),
            })
        };
        ExactProportion::from_counts(&parse(&self.num)?, &parse(&self.den)?)
    }
}
