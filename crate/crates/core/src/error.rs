use num::BigUint;
use thiserror::Error;

/// Errors raised by urn construction and the inference operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UrnError {
    #[error("an urn must contain at least one ball")]
    EmptyUrn,
    #[error("value {value} has count 0; every urn entry needs a positive count")]
    ZeroCount { value: String },
    #[error("value {value} appears more than once")]
    DuplicateValue { value: String },
    #[error("total ball count overflows u64")]
    CountOverflow,
    #[error("cannot parse exact value from {input:?}: {reason}")]
    InvalidValue { input: String, reason: String },
    #[error("removal is not a sub-multiset: value {value} removes {removed} of {available}")]
    NotSubMultiset {
        value: String,
        removed: u64,
        available: u64,
    },
    #[error("sample size n={n} must satisfy 1 <= n <= N={total}")]
    SampleSizeOutOfRange { n: u64, total: u64 },
    #[error("composition has {got} entries but the urn has {expected} distinct values")]
    Misaligned { expected: usize, got: usize },
    #[error("composition {counts:?} is not a valid sample of size {n}: {reason}")]
    InvalidComposition {
        counts: Vec<u64>,
        n: u64,
        reason: String,
    },
    #[error("theta={theta} lies outside the parameter set {domain}")]
    ThetaOutOfRange { theta: String, domain: String },
    #[error("theta={theta} is not representable with urn size {denominator}")]
    ThetaNotRepresentable { theta: String, denominator: u64 },
    #[error("theta={theta} is not on the grid")]
    ThetaNotOnGrid { theta: String },
    #[error("empty theta grid")]
    EmptyGrid,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("alpha={alpha} must lie in {range}")]
    InvalidAlpha { alpha: String, range: &'static str },
    #[error("number of Monte Carlo draws must be at least 1")]
    InvalidDraws,
    #[error("statistic table has no entry for sample {sample}")]
    MissingTableEntry { sample: String },
    #[error("invalid statistic: {0}")]
    InvalidStatistic(String),
    #[error("inconsistent counts: {0}")]
    InconsistentCounts(String),
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("sample space of size {size} exceeds the enumeration limit {limit}")]
    CapacityExceeded { size: BigUint, limit: BigUint },
}

impl UrnError {
    /// True for errors caused by an enumeration limit rather than invalid input.
    pub fn is_capacity(&self) -> bool {
        matches!(self, UrnError::CapacityExceeded { .. })
    }

    pub(crate) fn from_json(err: &serde_json::Error) -> Self {
        UrnError::Json {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, UrnError>;
