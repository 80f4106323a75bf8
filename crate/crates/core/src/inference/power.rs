use std::fmt;

use crate::error::{Result, UrnError};
use crate::proportion::ExactProportion;
use crate::statistics::TestStatistic;
use crate::urn::Urn;
use crate::value::Value;

use super::distribution::StatDistribution;

/// Lower edge of the rejection region `{T >= t*}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Threshold {
    At(Value),
    /// No nonempty region has null tail within alpha; nothing is rejected.
    Infinite,
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::At(v) => write!(f, "{v}"),
            Threshold::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerReport {
    pub t_star: Threshold,
    /// Null proportion of samples in the rejection region.
    pub achieved_alpha: ExactProportion,
    /// Alternative proportion of samples in the rejection region.
    pub beta: ExactProportion,
    pub requested_alpha: Value,
}

/// Chooses the largest rejection region `{T >= t*}` whose null proportion
/// does not exceed `alpha`, then reports how much of the alternative's
/// sample space it covers. `t*` ranges over statistic values attainable
/// under the null; the test is never randomized, so the achieved size may
/// fall below `alpha`.
pub fn power(
    null_model: &Urn,
    alt_model: &Urn,
    n: u64,
    stat: &TestStatistic,
    alpha: &Value,
) -> Result<PowerReport> {
    if alpha <= &Value::zero() || alpha > &Value::from(1i64) {
        return Err(UrnError::InvalidAlpha {
            alpha: alpha.to_string(),
            range: "(0, 1]",
        });
    }
    let alpha_p = ExactProportion::try_from(alpha)?;
    let null = StatDistribution::by_counting(null_model, n, stat)?;
    let alt = StatDistribution::by_counting(alt_model, n, stat)?;

    // Levels run from the largest value down, so tails only grow.
    let t_star = null
        .levels()
        .iter()
        .map(|(t, _)| t)
        .take_while(|t| null.tail(t) <= alpha_p)
        .last()
        .cloned();

    Ok(match t_star {
        Some(t) => PowerReport {
            achieved_alpha: null.tail(&t),
            beta: alt.tail(&t),
            t_star: Threshold::At(t),
            requested_alpha: alpha.clone(),
        },
        None => PowerReport {
            t_star: Threshold::Infinite,
            achieved_alpha: ExactProportion::zero(),
            beta: ExactProportion::zero(),
            requested_alpha: alpha.clone(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn urn(pairs: &[(i64, u64)]) -> Urn {
        Urn::new(pairs.iter().map(|&(v, c)| (Value::from(v), c))).unwrap()
    }

    #[test]
    fn four_ball_example() {
        let r = power(
            &urn(&[(0, 2), (1, 2)]),
            &urn(&[(0, 1), (1, 3)]),
            2,
            &TestStatistic::sum(),
            &"0.2".parse().unwrap(),
        )
        .unwrap();
        assert_eq!(r.t_star, Threshold::At(Value::from(2i64)));
        assert_eq!(r.achieved_alpha, ExactProportion::from_u64(1, 6).unwrap());
        assert_eq!(r.beta, ExactProportion::from_u64(1, 2).unwrap());
    }

    #[test]
    fn alpha_one_rejects_everything() {
        let null = urn(&[(0, 2), (1, 2)]);
        let r = power(
            &null,
            &urn(&[(0, 1), (1, 3)]),
            2,
            &TestStatistic::sum(),
            &Value::from(1i64),
        )
        .unwrap();
        assert_eq!(r.t_star, Threshold::At(Value::zero()));
        assert_eq!(r.achieved_alpha, ExactProportion::one());
        assert_eq!(r.beta, ExactProportion::one());
    }

    #[test]
    fn unattainable_alpha() {
        let null = urn(&[(0, 2), (1, 2)]);
        let r = power(
            &null,
            &null,
            2,
            &TestStatistic::sum(),
            &"0.1".parse().unwrap(),
        )
        .unwrap();
        assert_eq!(r.t_star, Threshold::Infinite);
        assert!(r.achieved_alpha.is_zero());
        assert!(r.beta.is_zero());
    }

    #[test]
    fn bad_inputs() {
        let u = urn(&[(0, 2), (1, 2)]);
        let small = urn(&[(1, 1)]);
        assert!(power(
            &u,
            &small,
            2,
            &TestStatistic::sum(),
            &"0.2".parse().unwrap()
        )
        .is_err());
        assert!(power(&u, &u, 2, &TestStatistic::sum(), &Value::zero()).is_err());
        assert!(power(&u, &u, 2, &TestStatistic::sum(), &"1.5".parse().unwrap()).is_err());
    }
}
