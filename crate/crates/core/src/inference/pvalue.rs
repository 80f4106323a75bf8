use std::collections::HashMap;

use num::traits::Zero;
use num::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::proportion::ExactProportion;
use crate::sample_space::{enumerate_samples, Composition};
use crate::statistics::TestStatistic;
use crate::urn::Urn;
use crate::value::Value;

use super::distribution::StatDistribution;

/// How a p-value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Weighted compositions.
    Counting,
    /// One visit per subset of balls.
    FullEnumeration,
    /// Simple random samples from a seeded generator.
    MonteCarlo,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Counting => "counting",
            Method::FullEnumeration => "full-enumeration",
            Method::MonteCarlo => "monte-carlo",
        }
    }
}

/// The counts behind a p-value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tally {
    /// `tail_count` of the `space_size` samples have `T >= t_obs`.
    Exact { tail_count: BigUint },
    /// `hits` of `draws` random samples had `T >= t_obs`.
    MonteCarlo { draws: u64, hits: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PValueResult {
    pub p: ExactProportion,
    pub t_obs: Value,
    pub method: Method,
    /// `C(N, n)`.
    pub space_size: BigUint,
    pub tally: Tally,
}

impl PValueResult {
    pub(crate) fn exact(
        method: Method,
        t_obs: Value,
        tail_count: BigUint,
        space_size: BigUint,
    ) -> Self {
        let p = ExactProportion::from_counts(&tail_count, &space_size)
            .expect("tail never exceeds the space");
        PValueResult {
            p,
            t_obs,
            method,
            space_size,
            tally: Tally::Exact { tail_count },
        }
    }

    pub fn tail_count(&self) -> Option<&BigUint> {
        match &self.tally {
            Tally::Exact { tail_count } => Some(tail_count),
            Tally::MonteCarlo { .. } => None,
        }
    }
}

/// Proportion of size-`n` samples of `model` whose statistic is `>= t_obs`,
/// computed from weighted compositions.
pub fn p_value(model: &Urn, n: u64, stat: &TestStatistic, t_obs: &Value) -> Result<PValueResult> {
    let dist = StatDistribution::by_counting(model, n, stat)?;
    Ok(PValueResult::exact(
        Method::Counting,
        t_obs.clone(),
        dist.tail_count(t_obs),
        dist.space_size().clone(),
    ))
}

/// Same proportion as [`p_value`], found by visiting every subset of balls.
/// Fails with a capacity error when `C(N, n) > limit`.
pub fn p_value_enumerated(
    model: &Urn,
    n: u64,
    stat: &TestStatistic,
    t_obs: &Value,
    limit: &BigUint,
) -> Result<PValueResult> {
    let values = model.values();
    let mut seen: HashMap<Composition, bool> = HashMap::new();
    let mut tail = BigUint::zero();
    let mut visited = BigUint::zero();
    for sample in enumerate_samples(model, n, limit)? {
        visited += 1u32;
        let hit = match seen.get(&sample) {
            Some(&hit) => hit,
            None => {
                let hit = &stat.evaluate(&sample, &values)? >= t_obs;
                seen.insert(sample, hit);
                hit
            }
        };
        if hit {
            tail += 1u32;
        }
    }
    Ok(PValueResult::exact(
        Method::FullEnumeration,
        t_obs.clone(),
        tail,
        visited,
    ))
}
