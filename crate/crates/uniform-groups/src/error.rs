use lie_matrix::LieError;
use padic_core::PadicError;
use thiserror::Error;

/// Errors raised by the group layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Algebra(#[from] LieError),
    #[error("prime mismatch: context has p = {context_p}, element has p = {element_p}")]
    PrimeMismatch { context_p: u64, element_p: u64 },
    #[error("matrix is not congruent to the identity modulo p^{level}: log series does not apply")]
    LogDomain { level: u32 },
    #[error("congruence level k = {k} must satisfy 1 <= k <= N = {precision}")]
    LevelOutOfRange { k: u32, precision: u32 },
    #[error("enumeration refused: estimated {estimated} elements exceeds the guard {limit} (raise the limit to override)")]
    EnumerationGuard { limit: usize, estimated: String },
    #[error("pairwise verification refused: {products} products exceed the guard {limit}")]
    PairGuard { limit: u64, products: u64 },
    #[error("generator {index} is not congruent to the identity modulo p^{level}")]
    GeneratorOutsideDomain { index: usize, level: u32 },
    #[error("subgroup is not contained in the series term at level {level}")]
    Containment { level: usize },
    #[error("element set is not closed: {detail}")]
    NotAGroup { detail: String },
}
