use thiserror::Error;

/// Errors raised by Lie-algebra elements and span computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix dimension must be at least 1")]
    ZeroDim,
    #[error("entry count {got} does not fill a {dim}x{dim} matrix")]
    BadEntryCount { dim: usize, got: usize },
    #[error("entry at ({row}, {col}) is not divisible by p^{needed}: not in the powerful algebra")]
    NotInAlgebra { row: usize, col: usize, needed: u32 },
    #[error("operands disagree: (p = {left_p}, m = {left_dim}) vs (p = {right_p}, m = {right_dim})")]
    MixedOperands {
        left_p: u64,
        left_dim: usize,
        right_p: u64,
        right_dim: usize,
    },
    #[error("bracket closure exceeded the dimension cap {cap}")]
    DimensionCap { cap: usize },
    #[error("generator pair needs m >= 2, got m = {0}")]
    PairNeedsRank(usize),
    #[error("normalization did not terminate within budget {budget}: the pair spans an abelian or degenerate algebra, or the budget is too small")]
    NormalizationBudget { budget: u64 },
    #[error("normalization collapsed a generator to zero: the pair is dependent or spans an abelian algebra")]
    DegeneratePair,
}
