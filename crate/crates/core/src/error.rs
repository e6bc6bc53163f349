use thiserror::Error;

/// Every failure mode of the engine. Variants map onto the documented error
/// cases of each operation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("product of two a-dependent entries exceeds degree 1 in a")]
    DegreeOverflow,
    #[error("matrix is not unipotent")]
    NonUnipotent,
    #[error("matrix is singular")]
    Singular,
    #[error("Gamma has a pole at {0}")]
    GammaPole(String),
    #[error("series does not converge: {0}")]
    NonConvergence(String),
    #[error("asymptotic series: |z| too small, minimal term at index 0")]
    ArgumentTooSmall,
    #[error("malformed operator word: {0}")]
    MalformedWord(String),
    #[error("transformed operator has negative power z^{0}")]
    NegativePower(i64),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("operator is not left-divisible by {0}")]
    NotLeftFactor(String),
    #[error("inconsistent toric data: {0}")]
    InconsistentToric(String),
    #[error("GKZ reduction failed: {0}")]
    Reduction(String),
    #[error("recurrence breakdown at index {0}: leading coefficient vanishes")]
    RecurrenceBreakdown(usize),
    #[error("exponent index {k} is not allowed for {model}")]
    InvalidExponent { model: String, k: u32 },
    #[error("indicial structure mismatch: {0}")]
    IndicialMismatch(String),
    #[error("continuation step failed: {0}")]
    StepFailure(String),
    #[error("rounding residual {residual} exceeds tolerance {tolerance}")]
    RoundingResidual { residual: String, tolerance: String },
    #[error("inconsistent matching: {0}")]
    InconsistentMatch(String),
    #[error("relation check failed: {0}")]
    Relation(String),
    #[error("linear system has no solution: {0}")]
    Unsolvable(String),
    #[error("residual exceeds bound: {0}")]
    ResidualExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
