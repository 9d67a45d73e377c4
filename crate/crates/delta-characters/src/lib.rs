//! Character calculus for a cyclic group Δ of order `p - 1` acting through
//! powers of a fixed faithful character ω, plus the explicit diagonal
//! Δ-actions on the standard generator pairs.
//!
//! Everything is exponent arithmetic mod `p - 1`: modules are exponent
//! multisets ([`CharacterVector`]), orthogonality is support disjointness,
//! obstruction dimensions are multiplicity pairings, and the two concrete
//! actions ([`DeltaAction`]) are verified through exact diagonal
//! conjugation — integer signs for the quadratic involution, first-layer
//! residues mod `p` for the cyclotomic twist.

mod action;
mod character;
mod error;

pub use action::{
    action_adapted_pair, verify_delta_action, ActionCheck, ActionKind, ActionReport, DeltaAction,
};
pub use character::{
    adjoint_weights, frank_character, mirror_exponent, obstruction_dimension, orthogonal,
    torsion_character, CharacterVector,
};
pub use error::CharacterError;
