//! Fixed-precision p-adic arithmetic.
//!
//! Everything in this crate works with residues modulo `p^N` for a prime `p`
//! and a precision `N >= 1` fixed by a [`PadicContext`]. Scalars and square
//! matrices are immutable values carrying their context; mixing contexts is
//! an error, never a silent coercion. The context also fixes
//! `epsilon = 0` for odd `p` and `1` for `p = 2`, the usual correction that
//! makes `1 + epsilon` the first level at which p-adic exponentials behave.

mod context;
mod error;
mod matrix;
mod primes;
mod scalar;
mod valuation;

pub use context::PadicContext;
pub use error::PadicError;
pub use matrix::PadicMatrix;
pub use primes::{factorize, is_prime, mod_inv_u64, mod_pow_u64, smallest_primitive_root};
pub use scalar::PadicScalar;
pub use valuation::{val_p, val_p_u64, Valuation};
