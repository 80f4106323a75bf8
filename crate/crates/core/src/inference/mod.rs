//! Exact p-values, confidence sets by test inversion, coverage, power, and
//! the Monte Carlo cross-check.
//!
//! Every probability here is a proportion of a finite sample space: the
//! count of size-n samples meeting a condition divided by `C(N, n)`. Tails
//! are always upper tails `T >= t` with ties included; two-sidedness is
//! expressed through the statistic (for example `|sum - center|`) or, for the
//! two-group randomization test, by adding the two disjoint group tails.

mod confidence;
mod distribution;
mod monte_carlo;
mod power;
mod pvalue;
mod randomization;

pub use confidence::{
    confidence_set, coverage_urn, ConfidenceSet, CoverageReport, CoverageRow, ThetaPoint,
};
pub use distribution::StatDistribution;
pub use monte_carlo::mc_p_value;
pub use power::{power, PowerReport, Threshold};
pub use pvalue::{p_value, p_value_enumerated, Method, PValueResult, Tally};
pub use randomization::{randomization_p_value, sharp_null_urn, Sided};

use crate::error::{Result, UrnError};
use crate::value::Value;

/// Checks `0 < alpha < 1`.
pub(crate) fn check_alpha_open(alpha: &Value) -> Result<()> {
    if alpha <= &Value::zero() || alpha >= &Value::from(1i64) {
        return Err(UrnError::InvalidAlpha {
            alpha: alpha.to_string(),
            range: "(0, 1)",
        });
    }
    Ok(())
}
