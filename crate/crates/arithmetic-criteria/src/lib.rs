//! Number-theoretic eligibility layer: Bernoulli numbers mod `p`,
//! irregular class-character indices, imaginary-quadratic class numbers,
//! and the condition checkers that decide which construction route applies
//! at a pair `(p, m)`.
//!
//! The flow is a pipeline. [`bernoulli_mod_p`] (or its quasi-linear twin
//! [`bernoulli_mod_p_power_sum`]) produces the residues `B_2t mod p`;
//! [`irregular_report`] mirrors the zero positions into odd exponents
//! `k_i = p - 2t` and factors `p - 1 = 2^lambda * a`;
//! [`check_theorem_conditions`] tests the two arithmetic conditions of the
//! cyclotomic route at a dimension `m`; [`scan_exception_table`] sweeps
//! all `p == 1 mod 4` up to a limit for the rare primes where the
//! divisibility condition fails, with restartable JSON-lines checkpoints.
//! For `p == 3 mod 4` the quadratic route instead needs
//! `p` coprime to the class number of `Q(sqrt(-p))`, which
//! [`imag_quadratic_class_number`] and [`quadratic_route_check`] decide by
//! exact reduced-forms enumeration.

mod bernoulli;
mod class_number;
mod eligibility;
mod error;
mod irregular;
mod scan;

pub use bernoulli::{
    bernoulli_mod_p, bernoulli_mod_p_power_sum, bernoulli_mod_p_with_method, BernoulliMethod,
    MAX_BERNOULLI_PRIME,
};
pub use class_number::{
    imag_quadratic_class_number, quadratic_route_check, QuadraticClassNumber,
    MAX_CLASS_NUMBER_PRIME,
};
pub use eligibility::{
    check_theorem_conditions, condition_ii_failures, ConditionI, ConditionII, EligibilityReport,
    Verdict,
};
pub use error::ArithmeticError;
pub use irregular::{
    irregular_report, irregular_report_with_method, IrregularityReport, POWER_SUM_CUTOFF,
};
pub use scan::{primes_up_to, scan_exception_table, ExceptionRow};
