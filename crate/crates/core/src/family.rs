//! Parameterized families of model urns.

use num::rational::BigRational;
use num::traits::{One, Zero};
use num::BigInt;

use crate::error::{Result, UrnError};
use crate::sample_space::Composition;
use crate::statistics::TestStatistic;
use crate::urn::Urn;
use crate::value::Value;

/// A set of fully known model urns indexed by a parameter theta.
///
/// Observed samples are given as compositions aligned with [`support`],
/// which covers every value any model urn in the family can hold.
///
/// [`support`]: ModelFamily::support
pub trait ModelFamily {
    /// Every value a model urn of the family may contain, ascending.
    fn support(&self) -> Vec<Value>;

    /// Human-readable description of the parameter set.
    fn domain(&self) -> String;

    /// The model urn at `theta`.
    fn model_urn(&self, theta: &Value) -> Result<Urn>;

    /// The statistic used when testing the model at `theta` with size-`n` samples.
    fn theta_statistic(&self, theta: &Value, n: u64) -> Result<TestStatistic>;

    /// Validates `theta` without building the urn.
    fn check_theta(&self, theta: &Value) -> Result<()> {
        self.model_urn(theta).map(|_| ())
    }

    /// Re-expresses a composition of `urn` (a member of this family) against
    /// the family support.
    fn align(&self, urn: &Urn, sample: &Composition) -> Result<Composition> {
        let support = self.support();
        let mut counts = vec![0; support.len()];
        for (value, k) in urn.values().iter().zip(sample.counts()) {
            let slot = support.binary_search(value).map_err(|_| {
                UrnError::InconsistentCounts(format!("value {value} outside the family support"))
            })?;
            counts[slot] = *k;
        }
        Ok(Composition::new(counts))
    }
}

/// Urns of `denominator` balls valued 0 or 1, with a proportion theta of ones.
///
/// Theta ranges over `[0, 1]`, but only multiples of `1/denominator` have a
/// model urn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryFamily {
    denominator: u64,
}

impl BinaryFamily {
    pub fn new(denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(UrnError::EmptyUrn);
        }
        Ok(BinaryFamily { denominator })
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// Number of ones in the model urn at `theta`.
    pub fn ones_at(&self, theta: &Value) -> Result<u64> {
        let r = theta.as_rational();
        if r < &BigRational::zero() || r > &BigRational::one() {
            return Err(UrnError::ThetaOutOfRange {
                theta: theta.to_string(),
                domain: self.domain(),
            });
        }
        let scaled = r * BigRational::from_integer(BigInt::from(self.denominator));
        if !scaled.is_integer() {
            return Err(UrnError::ThetaNotRepresentable {
                theta: theta.to_string(),
                denominator: self.denominator,
            });
        }
        Ok(u64::try_from(scaled.to_integer()).expect("bounded by the denominator"))
    }

    pub fn is_representable(&self, theta: &Value) -> bool {
        self.ones_at(theta).is_ok()
    }

    /// Every representable theta: `0, 1/D, ..., 1`.
    pub fn lattice(&self) -> Vec<Value> {
        (0..=self.denominator)
            .map(|k| Value::from_ratio(k as i64, self.denominator as i64))
            .collect()
    }

    /// The points `0, step, 2*step, ...` up to 1 that have a model urn.
    pub fn stepped_grid(&self, step: &Value) -> Result<Vec<Value>> {
        let s = step.as_rational();
        if s <= &BigRational::zero() || s > &BigRational::one() {
            return Err(UrnError::InvalidGrid(format!(
                "step {step} must lie in (0, 1]"
            )));
        }
        let mut grid = Vec::new();
        let mut j = 0i64;
        loop {
            let theta = Value::new(s * BigRational::from_integer(BigInt::from(j)));
            if theta.as_rational() > &BigRational::one() {
                break;
            }
            if self.is_representable(&theta) {
                grid.push(theta);
            }
            j += 1;
        }
        Ok(grid)
    }
}

impl ModelFamily for BinaryFamily {
    fn support(&self) -> Vec<Value> {
        vec![Value::from(0i64), Value::from(1i64)]
    }

    fn domain(&self) -> String {
        format!("[0, 1] in steps of 1/{}", self.denominator)
    }

    fn model_urn(&self, theta: &Value) -> Result<Urn> {
        let ones = self.ones_at(theta)?;
        Urn::from_aligned(&self.support(), &[self.denominator - ones, ones])
    }

    /// `|sum - n * theta|`: distance of the number of ones from its expectation.
    fn theta_statistic(&self, theta: &Value, n: u64) -> Result<TestStatistic> {
        self.ones_at(theta)?;
        let center = theta.as_rational() * BigRational::from_integer(BigInt::from(n));
        Ok(TestStatistic::abs_deviation(Value::new(center)))
    }

    fn check_theta(&self, theta: &Value) -> Result<()> {
        self.ones_at(theta).map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    #[test]
    fn model_urns() {
        let fam = BinaryFamily::new(10).unwrap();
        let half = fam.model_urn(&v("0.5")).unwrap();
        assert_eq!(half.counts(), vec![5, 5]);
        let zero = fam.model_urn(&v("0")).unwrap();
        assert_eq!(zero.values(), vec![v("0")]);
        assert_eq!(zero.total(), 10);
        assert_eq!(fam.model_urn(&v("1")).unwrap().values(), vec![v("1")]);
    }

    #[test]
    fn rejects_bad_theta() {
        let fam = BinaryFamily::new(10).unwrap();
        assert!(matches!(
            fam.model_urn(&v("-0.1")),
            Err(UrnError::ThetaOutOfRange { .. })
        ));
        assert!(matches!(
            fam.model_urn(&v("1.1")),
            Err(UrnError::ThetaOutOfRange { .. })
        ));
        assert!(matches!(
            fam.model_urn(&v("0.05")),
            Err(UrnError::ThetaNotRepresentable { .. })
        ));
        assert!(BinaryFamily::new(0).is_err());
    }

    #[test]
    fn grids() {
        let fam = BinaryFamily::new(8).unwrap();
        assert_eq!(fam.lattice().len(), 9);
        let g = fam.stepped_grid(&v("0.01")).unwrap();
        assert_eq!(g, vec![v("0"), v("0.25"), v("0.5"), v("0.75"), v("1")]);
        let fam = BinaryFamily::new(100).unwrap();
        assert_eq!(fam.stepped_grid(&v("0.01")).unwrap().len(), 101);
        assert!(fam.stepped_grid(&v("0")).is_err());
    }

    #[test]
    fn align_to_support() {
        let fam = BinaryFamily::new(4).unwrap();
        let ones_only = fam.model_urn(&v("1")).unwrap();
        let aligned = fam.align(&ones_only, &Composition::new(vec![3])).unwrap();
        assert_eq!(aligned.counts(), &[0, 3]);
    }
}
