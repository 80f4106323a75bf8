use std::fmt;
use std::str::FromStr;

use num::rational::BigRational;
use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Result, UrnError};
use crate::statistics::TestStatistic;
use crate::urn::Urn;
use crate::value::Value;

use super::pvalue::{p_value, Method, PValueResult};

/// Which tail of the two-group randomization test to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sided {
    /// At least the observed number of favorable responses in group A.
    OneA,
    /// At least the observed number of favorable responses in group B.
    OneB,
    /// The A-tail and the mirrored B-tail added together.
    Two,
}

impl Sided {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sided::OneA => "one-a",
            Sided::OneB => "one-b",
            Sided::Two => "two",
        }
    }
}

impl fmt::Display for Sided {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Sided {
    type Err = UrnError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "one-a" | "a" => Ok(Sided::OneA),
            "one-b" | "b" => Ok(Sided::OneB),
            "two" | "two-sided" => Ok(Sided::Two),
            _ => Err(UrnError::InconsistentCounts(format!(
                "unknown sidedness {s:?}; expected one-a, one-b or two"
            ))),
        }
    }
}

/// The urn of outcomes under the sharp null: every participant responds the
/// same under either treatment, so the `fav_a + fav_b` favorable outcomes
/// (value 1) and the remaining unfavorable ones (value 0) are fixed.
pub fn sharp_null_urn(n_a: u64, n_b: u64, fav_a: u64, fav_b: u64) -> Result<Urn> {
    if n_a == 0 || n_b == 0 {
        return Err(UrnError::InconsistentCounts(format!(
            "both groups need participants (n_A={n_a}, n_B={n_b})"
        )));
    }
    if fav_a > n_a || fav_b > n_b {
        return Err(UrnError::InconsistentCounts(format!(
            "favorable counts ({fav_a}, {fav_b}) exceed group sizes ({n_a}, {n_b})"
        )));
    }
    let total = n_a.checked_add(n_b).ok_or(UrnError::CountOverflow)?;
    let favorable = fav_a + fav_b;
    let entries = [
        (Value::from(0i64), total - favorable, "unfavorable"),
        (Value::from(1i64), favorable, "favorable"),
    ];
    Urn::labeled(
        entries
            .into_iter()
            .filter(|(_, c, _)| *c > 0)
            .map(|(v, c, l)| (v, c, Some(l.to_string()))),
    )
}

/// Exact randomization test for two groups with a binary outcome.
///
/// Under the sharp null the assignments of `n_a` of the `n_a + n_b`
/// participants to group A are equally likely. The one-sided tails count
/// assignments giving a group at least its observed favorable count. The
/// two-sided value adds the assignments where group A exceeds its null
/// expectation by at least the observed discrepancy to those where group B
/// does; the two sets are disjoint, and when the discrepancy is zero every
/// assignment qualifies.
pub fn randomization_p_value(
    n_a: u64,
    n_b: u64,
    fav_a: u64,
    fav_b: u64,
    sided: Sided,
) -> Result<PValueResult> {
    let urn = sharp_null_urn(n_a, n_b, fav_a, fav_b)?;
    let favorable = TestStatistic::count_of(Value::from(1i64));
    match sided {
        Sided::OneA => p_value(&urn, n_a, &favorable, &Value::from(fav_a)),
        Sided::OneB => p_value(&urn, n_b, &favorable, &Value::from(fav_b)),
        Sided::Two => {
            let total = BigRational::from_integer(BigInt::from(n_a + n_b));
            let k = BigRational::from_integer(BigInt::from(fav_a + fav_b));
            let expected_a = &k * BigRational::from_integer(BigInt::from(n_a)) / &total;
            let expected_b = &k * BigRational::from_integer(BigInt::from(n_b)) / &total;
            let observed = BigRational::from_integer(BigInt::from(fav_a));
            let discrepancy = Value::new(observed - &expected_a).abs();

            let a_tail = p_value(
                &urn,
                n_a,
                &favorable,
                &Value::new(expected_a + discrepancy.as_rational()),
            )?;
            if discrepancy == Value::zero() {
                return Ok(PValueResult::exact(
                    Method::Counting,
                    discrepancy,
                    a_tail.space_size.clone(),
                    a_tail.space_size,
                ));
            }
            let b_tail = p_value(
                &urn,
                n_b,
                &favorable,
                &Value::new(expected_b + discrepancy.as_rational()),
            )?;
            let tail = a_tail.tail_count().expect("exact") + b_tail.tail_count().expect("exact");
            Ok(PValueResult::exact(
                Method::Counting,
                discrepancy,
                tail,
                a_tail.space_size,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proportion::ExactProportion;

    #[test]
    fn clinical_trial_tails() {
        let a = randomization_p_value(30, 30, 25, 17, Sided::OneA).unwrap();
        let b = randomization_p_value(30, 30, 17, 25, Sided::OneB).unwrap();
        assert_eq!(a.p.to_decimal(4), "0.0235");
        assert_eq!(a.p, b.p);
        let two = randomization_p_value(30, 30, 25, 17, Sided::Two).unwrap();
        assert_eq!(two.p.to_decimal(3), "0.047");
        assert_eq!(two.p, a.p.checked_add(&a.p).unwrap());
        assert_eq!(two.t_obs, Value::from(4i64));
    }

    #[test]
    fn forced_assignment() {
        let r = randomization_p_value(1, 1, 1, 1, Sided::OneA).unwrap();
        assert_eq!(r.p, ExactProportion::one());
        let r = randomization_p_value(1, 1, 1, 1, Sided::Two).unwrap();
        assert_eq!(r.p, ExactProportion::one());
    }

    #[test]
    fn zero_discrepancy_is_one() {
        let r = randomization_p_value(10, 10, 4, 4, Sided::Two).unwrap();
        assert_eq!(r.p, ExactProportion::one());
    }

    #[test]
    fn inconsistent_counts() {
        assert!(randomization_p_value(3, 3, 4, 0, Sided::OneA).is_err());
        assert!(randomization_p_value(0, 3, 0, 1, Sided::OneA).is_err());
        assert!(randomization_p_value(3, 3, 0, 5, Sided::Two).is_err());
    }

    #[test]
    fn sidedness_parsing() {
        assert_eq!("two".parse::<Sided>().unwrap(), Sided::Two);
        assert_eq!("one-A".parse::<Sided>().unwrap(), Sided::OneA);
        assert!("left".parse::<Sided>().is_err());
    }
}
