use std::collections::BTreeMap;

use num::traits::Zero;
use num::BigUint;

use crate::error::Result;
use crate::proportion::ExactProportion;
use crate::sample_space::SampleSpace;
use crate::statistics::TestStatistic;
use crate::urn::Urn;
use crate::value::Value;

/// The exact distribution of a statistic over a sample space: each distinct
/// statistic value with the number of samples attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatDistribution {
    space_size: BigUint,
    // Descending by value.
    levels: Vec<(Value, BigUint)>,
    // cumulative[i] = weight of levels[0..=i]
    cumulative: Vec<BigUint>,
}

impl StatDistribution {
    /// Builds the distribution from weighted compositions.
    pub fn by_counting(urn: &Urn, n: u64, stat: &TestStatistic) -> Result<Self> {
        let space = SampleSpace::new(urn, n)?;
        let values = urn.values();
        let mut acc: BTreeMap<Value, BigUint> = BTreeMap::new();
        for (composition, weight) in space.compositions() {
            let t = stat.evaluate(&composition, &values)?;
            *acc.entry(t).or_insert_with(BigUint::zero) += weight;
        }
        let levels: Vec<(Value, BigUint)> = acc.into_iter().rev().collect();
        let cumulative = levels
            .iter()
            .scan(BigUint::zero(), |run, (_, w)| {
                *run += w;
                Some(run.clone())
            })
            .collect();
        Ok(StatDistribution {
            space_size: space.size().clone(),
            levels,
            cumulative,
        })
    }

    pub fn space_size(&self) -> &BigUint {
        &self.space_size
    }

    /// Distinct attainable statistic values with their sample counts, largest first.
    pub fn levels(&self) -> &[(Value, BigUint)] {
        &self.levels
    }

    /// Number of samples with statistic `>= t`.
    pub fn tail_count(&self, t: &Value) -> BigUint {
        let idx = self.levels.partition_point(|(v, _)| v >= t);
        if idx == 0 {
            BigUint::zero()
        } else {
            self.cumulative[idx - 1].clone()
        }
    }

    /// Proportion of samples with statistic `>= t`.
    pub fn tail(&self, t: &Value) -> ExactProportion {
        ExactProportion::from_counts(&self.tail_count(t), &self.space_size)
            .expect("tail never exceeds the space")
    }
}
