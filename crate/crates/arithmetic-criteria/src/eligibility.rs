//! The two arithmetic eligibility conditions for the cyclotomic route at a
//! prime `p == 1 mod 4` and a matrix dimension `m >= 3`.
//!
//! Write `p - 1 = 2^lambda * a` with `a` odd and let `k_1 < ... < k_e` be
//! the odd class-character exponents of `p` (see
//! [`crate::irregular_report`]). The route applies when both of the
//! following hold:
//!
//! * condition (i): `v_2(m - 1) >= lambda` when `m` is odd, or
//!   `v_2(m - 2) >= lambda` when `m` is even;
//! * condition (ii): `a` divides no `k_i - 1`.
//!
//! Condition (i) constrains only `m` and is often repairable by moving to
//! another dimension; condition (ii) depends only on `p` and is the rare
//! obstruction the exception scan hunts for. A regular prime has no `k_i`,
//! so (ii) holds vacuously. Primes `p == 3 mod 4` fall outside these
//! conditions entirely — the quadratic route covers them — and get the
//! `OutOfTheorem` verdict rather than an error.

use padic_core::is_prime;

use crate::error::ArithmeticError;
use crate::irregular::{irregular_report, IrregularityReport};

/// Overall outcome of the two-condition check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Both conditions hold; the cyclotomic route applies at `(p, m)`.
    Eligible,
    /// Condition (i) fails: the two-adic valuation of the shifted dimension
    /// falls short of `lambda`.
    BlockedByI,
    /// Condition (ii) fails: some `k_i - 1` is divisible by `a`.
    BlockedByII,
    /// `p != 1 mod 4`; the quadratic route is the relevant criterion.
    OutOfTheorem,
}

/// Condition (i) with the numbers that decided it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionI {
    /// Whether the valuation bound holds.
    pub holds: bool,
    /// `m - 1` for odd `m`, `m - 2` for even `m`.
    pub shifted_dimension: u64,
    /// `v_2` of the shifted dimension.
    pub valuation: u32,
    /// The bound `lambda = v_2(p - 1)` it must reach.
    pub lambda: u32,
}

/// Condition (ii) with the exponents that broke it, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionII {
    /// Whether `a` divides no `k_i - 1`.
    pub holds: bool,
    /// The `k_i` with `a | (k_i - 1)`, sorted increasingly.
    pub failing_indices: Vec<u64>,
}

/// Outcome of [`check_theorem_conditions`] at one `(p, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EligibilityReport {
    p: u64,
    m: u64,
    irregularity: IrregularityReport,
    cond_i: ConditionI,
    cond_ii: ConditionII,
    verdict: Verdict,
}

impl EligibilityReport {
    /// The prime checked.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The matrix dimension checked.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// The underlying irregularity data of `p`.
    pub fn irregularity(&self) -> &IrregularityReport {
        &self.irregularity
    }

    /// Condition (i) details.
    pub fn cond_i(&self) -> &ConditionI {
        &self.cond_i
    }

    /// Condition (ii) details.
    pub fn cond_ii(&self) -> &ConditionII {
        &self.cond_ii
    }

    /// The verdict. Condition (i) is reported first when both fail.
    pub fn verdict(&self) -> Verdict {
        self.verdict
    }
}

/// The failing indices of condition (ii) for a report: the `k_i` with
/// `a | (k_i - 1)`. Exposed separately because the exception scan needs it
/// without fixing any `m`.
pub fn condition_ii_failures(report: &IrregularityReport) -> Vec<u64> {
    let a = report.a();
    report
        .class_char_indices()
        .iter()
        .copied()
        .filter(|&k| (k - 1) % a == 0)
        .collect()
}

/// Checks conditions (i) and (ii) at `(p, m)`.
///
/// `p` must be prime and `m >= 3`. For `p != 1 mod 4` the verdict is
/// [`Verdict::OutOfTheorem`] and both condition records are still filled
/// in, so callers can display what the numbers would have said.
pub fn check_theorem_conditions(p: u64, m: u64) -> Result<EligibilityReport, ArithmeticError> {
    if !is_prime(p) {
        return Err(ArithmeticError::NotPrime(p));
    }
    if m < 3 {
        return Err(ArithmeticError::DimensionTooSmall(m));
    }
    let irregularity = irregular_report(p)?;
    let shifted_dimension = if m % 2 == 1 { m - 1 } else { m - 2 };
    let valuation = if shifted_dimension == 0 {
        // m = 2 is rejected above; this arm is unreachable but keeps the
        // arithmetic total.
        u32::MAX
    } else {
        shifted_dimension.trailing_zeros()
    };
    let cond_i = ConditionI {
        holds: valuation >= irregularity.lambda(),
        shifted_dimension,
        valuation,
        lambda: irregularity.lambda(),
    };
    let failing_indices = condition_ii_failures(&irregularity);
    let cond_ii = ConditionII { holds: failing_indices.is_empty(), failing_indices };
    let verdict = if p % 4 != 1 {
        Verdict::OutOfTheorem
    } else if !cond_i.holds {
        Verdict::BlockedByI
    } else if !cond_ii.holds {
        Verdict::BlockedByII
    } else {
        Verdict::Eligible
    };
    Ok(EligibilityReport { p, m, irregularity, cond_i, cond_ii, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_five_is_eligible() {
        let report = check_theorem_conditions(5, 5).unwrap();
        assert_eq!(report.verdict(), Verdict::Eligible);
        assert!(report.cond_i().holds);
        assert_eq!(report.cond_i().valuation, 2);
        assert_eq!(report.cond_i().lambda, 2);
        assert!(report.cond_ii().holds);
    }

    #[test]
    fn five_three_is_blocked_by_the_valuation() {
        let report = check_theorem_conditions(5, 3).unwrap();
        assert_eq!(report.verdict(), Verdict::BlockedByI);
        assert_eq!(report.cond_i().shifted_dimension, 2);
        assert_eq!(report.cond_i().valuation, 1);
        assert_eq!(report.cond_i().lambda, 2);
    }

    #[test]
    fn two_fifty_seven_is_blocked_by_the_divisibility() {
        // m = 257 passes (i) with v_2(256) = 8 = lambda; a = 1 divides
        // k - 1 = 92, so (ii) fails.
        let report = check_theorem_conditions(257, 257).unwrap();
        assert_eq!(report.verdict(), Verdict::BlockedByII);
        assert!(report.cond_i().holds);
        assert_eq!(report.cond_ii().failing_indices, vec![93]);
    }

    #[test]
    fn one_fifty_seven_survives_both_conditions() {
        // lambda = 2, v_2(156) = 2; a = 39 divides neither 46 nor 94.
        let report = check_theorem_conditions(157, 157).unwrap();
        assert_eq!(report.verdict(), Verdict::Eligible);
        assert_eq!(report.irregularity().class_char_indices(), &[47, 95]);
        assert_eq!(report.irregularity().a(), 39);
        assert!(report.cond_ii().failing_indices.is_empty());
    }

    #[test]
    fn three_mod_four_primes_point_to_the_quadratic_route() {
        for p in [7u64, 11, 19, 23] {
            let report = check_theorem_conditions(p, 4).unwrap();
            assert_eq!(report.verdict(), Verdict::OutOfTheorem, "p = {p}");
        }
    }

    #[test]
    fn even_dimensions_shift_by_two() {
        // p = 13: lambda = 2. m = 6 gives v_2(4) = 2, passing; m = 4 gives
        // v_2(2) = 1, failing.
        assert_eq!(check_theorem_conditions(13, 6).unwrap().verdict(), Verdict::Eligible);
        assert_eq!(check_theorem_conditions(13, 4).unwrap().verdict(), Verdict::BlockedByI);
    }

    #[test]
    fn bad_arguments_are_rejected() {
        assert!(matches!(check_theorem_conditions(15, 5), Err(ArithmeticError::NotPrime(15))));
        assert!(matches!(
            check_theorem_conditions(13, 2),
            Err(ArithmeticError::DimensionTooSmall(2))
        ));
    }

    #[test]
    fn verdict_is_consistent_with_the_flags() {
        for p in (5..500).filter(|&p| is_prime(p) && p % 4 == 1) {
            for m in [3u64, 4, 5, 9, 16, 17] {
                let report = check_theorem_conditions(p, m).unwrap();
                let expected = if !report.cond_i().holds {
                    Verdict::BlockedByI
                } else if !report.cond_ii().holds {
                    Verdict::BlockedByII
                } else {
                    Verdict::Eligible
                };
                assert_eq!(report.verdict(), expected, "p = {p}, m = {m}");
            }
        }
    }
}
