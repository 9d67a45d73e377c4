//! Irregular indices of a prime, phrased on the class-group side.
//!
//! For an odd prime `p`, the irregular Bernoulli indices are the even `2t`
//! with `2 <= 2t <= p - 3` and `B_2t == 0 mod p`. The Herbrand–Ribet
//! correspondence turns each of them into the odd exponent `k = p - 2t`
//! (with `3 <= k <= p - 2`) of a character cutting out a nontrivial
//! component of the p-part of the relevant class group; those `k` are what
//! the eligibility conditions consume. The report also carries the
//! two-part factorization `p - 1 = 2^lambda * a` with `a` odd, which the
//! same conditions test against.

use padic_core::is_prime;

use crate::bernoulli::{bernoulli_mod_p, bernoulli_mod_p_power_sum, BernoulliMethod};
use crate::error::ArithmeticError;

/// Primes up to this bound use the quadratic recurrence; larger ones use
/// the quasi-linear power-sum route. The two routes are cross-checked on a
/// wide overlapping range by the acceptance suite.
pub const POWER_SUM_CUTOFF: u64 = 4096;

/// Irregularity data of a prime: the odd class-character exponents `k_i`
/// and the splitting `p - 1 = 2^lambda * a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrregularityReport {
    p: u64,
    lambda: u32,
    a: u64,
    class_char_indices: Vec<u64>,
    method: BernoulliMethod,
}

impl IrregularityReport {
    /// The prime the report describes.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// `v_2(p - 1)`.
    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    /// The odd part of `p - 1`.
    pub fn a(&self) -> u64 {
        self.a
    }

    /// The odd exponents `k_i = p - 2t` over the irregular indices `2t`,
    /// sorted increasingly.
    pub fn class_char_indices(&self) -> &[u64] {
        &self.class_char_indices
    }

    /// The index of irregularity `e` (how many components are nontrivial).
    pub fn e(&self) -> usize {
        self.class_char_indices.len()
    }

    /// Whether `p` is regular.
    pub fn is_regular(&self) -> bool {
        self.class_char_indices.is_empty()
    }

    /// Which Bernoulli route produced the data.
    pub fn method(&self) -> BernoulliMethod {
        self.method
    }
}

/// Computes the [`IrregularityReport`] of `p`, choosing the Bernoulli route
/// by size (see [`POWER_SUM_CUTOFF`]).
pub fn irregular_report(p: u64) -> Result<IrregularityReport, ArithmeticError> {
    let method = if p <= POWER_SUM_CUTOFF {
        BernoulliMethod::Recurrence
    } else {
        BernoulliMethod::PowerSum
    };
    irregular_report_with_method(p, method)
}

/// Computes the [`IrregularityReport`] of `p` by the requested Bernoulli
/// route.
pub fn irregular_report_with_method(
    p: u64,
    method: BernoulliMethod,
) -> Result<IrregularityReport, ArithmeticError> {
    if !is_prime(p) {
        return Err(ArithmeticError::NotPrime(p));
    }
    let table = match method {
        BernoulliMethod::Recurrence => bernoulli_mod_p(p)?,
        BernoulliMethod::PowerSum => bernoulli_mod_p_power_sum(p)?,
    };
    let mut class_char_indices: Vec<u64> =
        table.iter().filter(|&(_, &v)| v == 0).map(|(&n, _)| p - n).collect();
    class_char_indices.sort_unstable();
    let lambda = (p - 1).trailing_zeros();
    let a = (p - 1) >> lambda;
    Ok(IrregularityReport { p, lambda, a, class_char_indices, method })
}
