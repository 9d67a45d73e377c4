use thiserror::Error;

/// Errors raised by p-adic contexts, scalars and matrices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precision must be at least 1")]
    PrecisionZero,
    #[error("context mismatch: (p = {left_p}, N = {left_n}) vs (p = {right_p}, N = {right_n})")]
    ContextMismatch {
        left_p: u64,
        left_n: u32,
        right_p: u64,
        right_n: u32,
    },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("not invertible at p: valuation of the obstruction is positive")]
    NotInvertible,
    #[error("entry count {got} does not fill a {dim}x{dim} matrix")]
    BadEntryCount { dim: usize, got: usize },
}
