use thiserror::Error;

/// Errors surfaced by the exact and log-tier computations.
///
/// `Undecided` outcomes are *not* errors; they travel through
/// [`crate::report::Status`]. Errors here mean a precondition was violated or
/// a materialization budget would be exceeded.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partial quotient list must be nonempty")]
    EmptyPartialQuotients,

    #[error("partial quotient a_{position} must be >= 1")]
    ZeroPartialQuotient { position: usize },

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("need {needed} branch bits for depth {depth}, got {got}")]
    InsufficientBits {
        needed: usize,
        got: usize,
        depth: usize,
    },

    #[error("depth must be >= 3 (the first three partial quotients are fixed), got {depth}")]
    DepthTooSmall { depth: usize },

    #[error("value must be positive")]
    NonpositiveValue,

    #[error("growth exponent (m-3)! undefined for m = {m} < 3")]
    GrowthIndexTooSmall { m: usize },

    #[error("window must contain at least {min} entries, got {got}")]
    WindowTooShort { min: usize, got: usize },

    #[error("empty window")]
    EmptyWindow,

    #[error("conflicting window bounds {lo}..{hi}")]
    ConflictingWindow { lo: usize, hi: usize },

    #[error("gap sequence does not cover index {index}; cannot decide membership")]
    InsufficientGapTerms { index: String },

    #[error("gap base {base} outside {{2,3}}; supply it as a custom sequence instead")]
    GapBaseOutOfRange { base: u64 },

    #[error("custom gap terms must be strictly increasing with first term >= 2")]
    GapTermsNotIncreasing,

    #[error(
        "exact tier unavailable: {what} needs exponent {exponent} > budget {budget}; \
         use the log tier or raise the budget"
    )]
    BudgetExceeded {
        what: String,
        exponent: String,
        budget: u64,
    },

    #[error("truncation precedes every gap term above it; no tail term known beyond {m}")]
    NoGapTermBeyond { m: String },

    #[error("domination margin insufficient: term ratio bound {ratio} exceeds -log10(2)")]
    DominationMarginInsufficient { ratio: String },

    #[error("t_j = 1: no previous gap term, the approximant is undefined for phi = {phi}")]
    TjUndefined { phi: u64 },

    #[error("need {needed} convergents for the requested window, have {have} (max feasible n = {max_n})")]
    InsufficientConvergents {
        needed: usize,
        have: usize,
        max_n: usize,
    },

    #[error("operation cancelled")]
    Cancelled,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
