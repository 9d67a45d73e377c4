//! Powerful matrix Lie algebras over the p-adic integers, exactly.
//!
//! Elements live in `p^(1+eps) * gl_m(Z_p)` with `eps = 1` for `p = 2` and
//! `0` otherwise; this divisibility is what makes the algebra *powerful*
//! (`[L, L]` lands in `p^(1+eps) L`) and keeps the exponential series
//! convergent upstream. Entries are arbitrary-precision integers, so every
//! bracket and span computation here is exact — truncation to `p^N` happens
//! only when an element is handed to the group layer.
//!
//! The crate provides the bracket, the depth filtration `w(x) = max {k :
//! x in p^k * (p^(1+eps) gl_m)}`, rational span bases with deterministic
//! echelon form, bracket closures, the standard two-element generating
//! pairs of `sl_m`, and the valuation-matching normalization that turns an
//! arbitrary independent pair into one with equal depth and independent
//! residue images.

mod element;
mod error;
mod generators;
mod span;

pub use element::LieElement;
pub use error::LieError;
pub use generators::{normalize_generators, standard_generators};
pub use span::{bracket_closure, SpanBasis};
