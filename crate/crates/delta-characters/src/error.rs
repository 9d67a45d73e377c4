use thiserror::Error;

/// Errors from character arithmetic and Δ-action verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("character moduli differ: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("twist exponent a = {a} must be odd and satisfy 1 <= a <= p-2 = {max}")]
    BadTwist { a: u64, max: u64 },
    #[error("dimension m = {0} must be at least 2")]
    BadDimension(usize),
    #[error("the cyclotomic action is only defined for m >= 3, got m = {0}")]
    ActionUnsupported(usize),
    #[error("generator pair has dimension {got}, action expects {expected}")]
    PairDimension { expected: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] lie_matrix::LieError),
}
