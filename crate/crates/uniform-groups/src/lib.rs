//! Finite congruence quotients of matrix groups over `Z_p`, and the exact
//! exp/log bridge to the powerful Lie algebras of `lie-matrix`.
//!
//! Everything happens at a fixed precision `N`: the congruence subgroup at
//! level `k` becomes the finite kernel of `GL_m(Z/p^N) -> GL_m(Z/p^(k+eps))`,
//! the exponential becomes an exactly-truncated series whose tail provably
//! vanishes mod `p^N`, and the lower p-central series, Frattini quotients and
//! friends become finite p-group computations on enumerated element sets.
//!
//! Enumeration is always guarded: constructors take [`EnumerationLimits`]
//! and refuse (with a size estimate) rather than attempt an infeasible
//! closure.

mod error;
mod exp_log;
mod group;
mod series;

pub use error::GroupError;
pub use exp_log::{exp_mat, exp_truncation_bound, log_mat, log_truncation_bound};
pub use group::{congruence_kernel, generated_subgroup, CongruenceLevel, EnumerationLimits, FiniteMatrixGroup};
pub use series::{
    decalage_check, frattini, normal_closure, p_central_series, p_rank,
    proper_solution_rank_check, quotient_rank, CentralSeries, DecalageReport, NamedCheck,
};
