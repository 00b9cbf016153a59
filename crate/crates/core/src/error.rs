use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan type {family}{rank}")]
    InvalidType { family: char, rank: usize },

    #[error("cannot parse Cartan type {0:?}")]
    BadTypeName(String),

    #[error("weight must have {expected} multiplicities, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("the zero weight is not a valid shape")]
    ZeroWeight,

    #[error("parabolic subset {0:?} is not contained in the stabilizer of the weight")]
    BadParabolic(Vec<usize>),

    #[error("Weyl group has more than {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("enumeration exceeded the cap of {cap} {what}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("arithmetic overflow")]
    Overflow,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("sigma must lie strictly between 0 and 1, got {0}")]
    SigmaOutOfRange(String),

    #[error("time {0} outside [0, 1]")]
    TimeOutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a minimal coset representative: {0}")]
    NotMinimalRep(String),

    #[error("invalid quantum LS path: {0}")]
    InvalidPath(String),

    #[error("segment {source_rep} -> {target_rep} at sigma {sigma} has no shortest admissible path")]
    NotHatSegment { source_rep: usize, target_rep: usize, sigma: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("delta window {window} exceeded; result inconclusive")]
    Inconclusive { window: i64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
