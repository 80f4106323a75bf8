//! Exact inference on finite urns.
//!
//! Populations and models are finite multisets of values ([`Urn`]). The
//! size-n samples of an urn form a second, finite urn of `C(N, n)` equally
//! likely outcomes, so p-values, confidence sets, coverage and power are all
//! proportions of that sample space and are returned as exact rationals
//! ([`ExactProportion`]).
//!
//! ```
//! use urnstat::{randomization_p_value, Sided};
//!
//! let p = randomization_p_value(30, 30, 25, 17, Sided::Two).unwrap();
//! assert_eq!(p.p.to_decimal(3), "0.047");
//! ```

pub mod error;
pub mod family;
pub mod inference;
pub mod proportion;
pub mod sample_space;
pub mod statistics;
pub mod urn;
pub mod value;

pub use error::{Result, UrnError};
pub use family::{BinaryFamily, ModelFamily};
pub use inference::{
    confidence_set, coverage_urn, mc_p_value, p_value, p_value_enumerated, power,
    randomization_p_value, sharp_null_urn, ConfidenceSet, CoverageReport, CoverageRow, Method,
    PValueResult, PowerReport, Sided, StatDistribution, Tally, ThetaPoint, Threshold,
};
pub use proportion::{ExactProportion, ProportionJson};
pub use sample_space::{
    binomial, enumerate_compositions, enumerate_samples, space_size, srs_draw, Composition,
    SampleSpace, SrsSequence, DEFAULT_ENUMERATION_LIMIT,
};
pub use statistics::{theta_statistic, StatTable, StatisticKind, TestStatistic};
pub use urn::{Urn, UrnDoc, UrnDocEntry};
pub use value::Value;
