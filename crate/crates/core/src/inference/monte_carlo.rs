use std::collections::HashMap;

use crate::error::{Result, UrnError};
use crate::proportion::ExactProportion;
use crate::sample_space::{space_size, Composition, SrsSequence};
use crate::statistics::TestStatistic;
use crate::urn::Urn;
use crate::value::Value;

use super::pvalue::{Method, PValueResult, Tally};

/// Fraction of `draws` seeded simple random samples with `T >= t_obs`.
///
/// This is the repeated-sampling estimate of the exact proportion returned
/// by [`p_value`](super::p_value); it exists to cross-check it.
pub fn mc_p_value(
    model: &Urn,
    n: u64,
    stat: &TestStatistic,
    t_obs: &Value,
    draws: u64,
    seed: u64,
) -> Result<PValueResult> {
    if draws == 0 {
        return Err(UrnError::InvalidDraws);
    }
    let size = space_size(model, n)?;
    let values = model.values();
    let mut seen: HashMap<Composition, bool> = HashMap::new();
    let mut hits = 0u64;
    for sample in SrsSequence::new(model, n, seed)?.take(draws as usize) {
        let hit = match seen.get(&sample) {
            Some(&hit) => hit,
            None => {
                let hit = &stat.evaluate(&sample, &values)? >= t_obs;
                seen.insert(sample, hit);
                hit
            }
        };
        hits += u64::from(hit);
    }
    Ok(PValueResult {
        p: ExactProportion::from_u64(hits, draws)?,
        t_obs: t_obs.clone(),
        method: Method::MonteCarlo,
        space_size: size,
        tally: Tally::MonteCarlo { draws, hits, seed },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn below_minimum_always_hits() {
        let u = Urn::new(vec![(Value::from(0i64), 18), (Value::from(1i64), 42)]).unwrap();
        let stat = TestStatistic::count_of(Value::from(1i64));
        for seed in [1, 2, 3] {
            let r = mc_p_value(&u, 30, &stat, &Value::from(12i64), 500, seed).unwrap();
            assert_eq!(r.p, ExactProportion::one());
        }
    }

    #[test]
    fn zero_draws_rejected() {
        let u = Urn::new(vec![(Value::from(0i64), 2)]).unwrap();
        assert_eq!(
            mc_p_value(&u, 1, &TestStatistic::sum(), &Value::zero(), 0, 1),
            Err(UrnError::InvalidDraws)
        );
    }
}
