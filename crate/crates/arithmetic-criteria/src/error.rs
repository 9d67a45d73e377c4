use thiserror::Error;

/// Errors raised by the arithmetic eligibility layer.
#[derive(Debug, Error)]
pub enum ArithmeticError {
    /// The argument was expected to be prime.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// The prime is too small for the requested computation.
    #[error("prime {p} is below the minimum {min} for this computation")]
    PrimeTooSmall { p: u64, min: u64 },

    /// The prime exceeds the range the fixed-width reduction supports.
    #[error("prime {p} exceeds the supported bound {max}")]
    PrimeTooLarge { p: u64, max: u64 },

    /// The matrix dimension is outside the range of the criterion.
    #[error("matrix dimension {0} is too small; the criterion needs m >= 3")]
    DimensionTooSmall(u64),

    /// A scan limit that cannot produce any work.
    #[error("scan limit {0} is below the smallest admissible prime")]
    LimitTooSmall(u64),

    /// A checkpoint file held a line that does not parse back.
    #[error("corrupt checkpoint entry: {0}")]
    CorruptCheckpoint(String),

    /// Failure reading or writing a checkpoint file.
    #[error("checkpoint i/o: {0}")]
    Io(#[from] std::io::Error),

    /// Failure serializing or deserializing a checkpoint line.
    #[error("checkpoint encoding: {0}")]
    Json(#[from] serde_json::Error),
}
