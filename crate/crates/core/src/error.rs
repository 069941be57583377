use thiserror::Error;

/// Errors raised by code construction, decoding, and the hardware models.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolarError {
    #[error("block length {0} is not a power of two >= 2")]
    BlockLength(usize),
    #[error("information length {k} out of range for block length {n}")]
    InfoLength { n: usize, k: usize },
    #[error("design erasure probability {0} must lie strictly between 0 and 1")]
    DesignErasure(f64),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("bit value {0} is not binary")]
    NotBinary(u8),
    #[error("frozen position {0} carries a nonzero bit")]
    FrozenViolation(usize),
    #[error("likelihood domain is limited to n <= {max} (got n = {n})")]
    LikelihoodTooLong { n: usize, max: usize },
    #[error("decision exponent K = {k_bits} does not fit block length {n}")]
    DecisionWidth { n: usize, k_bits: u32 },
    #[error("decision exponent K = {0} exceeds the practical limit of 3; enable allow_large_k to override")]
    DecisionWidthGuard(u32),
    #[error("list size must be at least 1")]
    ListSize,
    #[error("transform of size {transform} does not match {inputs} input pairs")]
    TransformSize { transform: usize, inputs: usize },
    #[error("metric computation needs K >= 1")]
    McuBypassed,
    #[error("selector size exponent must be at least 1")]
    SelectorSize,
    #[error("stage {stage} out of range 1..={m}")]
    StageRange { stage: usize, m: usize },
    #[error("pipeline model has no pipeline stages")]
    NoPipelineStages,
    #[error("rate {0} must lie in (0, 1]")]
    Rate(f64),
    #[error("frame count must be at least 1")]
    NoFrames,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, PolarError>;
