//! Cross-crate consistency sweeps, runnable from the command line.
//!
//! The quick profile re-derives a representative slice of every pillar
//! (closure dimensions, exp/log, filtrations, the embedding criteria, the
//! Δ-action table, the exception scan, class numbers, and the dual
//! Bernoulli routes) in under a minute. The full profile widens every
//! sweep, including the complete desk-scale exception scan.

use std::str::FromStr;

use serde_json::{json, Map, Value};

use arithmetic_criteria::{
    imag_quadratic_class_number, irregular_report_with_method, primes_up_to,
    quadratic_route_check, scan_exception_table, BernoulliMethod, ExceptionRow,
};
use delta_characters::{action_adapted_pair, verify_delta_action, DeltaAction};
use lie_matrix::{bracket_closure, standard_generators};
use padic_core::PadicContext;
use uniform_groups::{
    congruence_kernel, decalage_check, exp_mat, generated_subgroup, log_mat, p_central_series,
    p_rank, proper_solution_rank_check, CongruenceLevel, EnumerationLimits, FiniteMatrixGroup,
};

use crate::error::LabError;
use crate::report::CheckResult;

/// How wide the sweeps run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Representative slice, under a minute.
    Quick,
    /// Complete desk-scale sweeps, several minutes.
    Full,
}

impl Profile {
    fn label(self) -> &'static str {
        match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        }
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(format!("unknown profile {other:?}; expected quick or full")),
        }
    }
}

/// The outcome of one self-test run.
#[derive(Clone, Debug)]
pub struct SelfTestReport {
    profile: Profile,
    checks: Vec<CheckResult>,
}

impl SelfTestReport {
    /// The profile that ran.
    pub fn profile(&self) -> Profile {
        self.profile
    }

    /// Individual sweep results.
    pub fn checks(&self) -> &[CheckResult] {
        &self.checks
    }

    /// Whether every sweep passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Canonical JSON form.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("kind".into(), json!("selftest-report"));
        map.insert("profile".into(), json!(self.profile.label()));
        map.insert(
            "checks".into(),
            Value::Array(self.checks.iter().map(CheckResult::to_json).collect()),
        );
        map.insert("passed".into(), json!(self.passed()));
        Value::Object(map)
    }
}

fn same_group(a: &FiniteMatrixGroup, b: &FiniteMatrixGroup) -> bool {
    a.order() == b.order() && a.elements().all(|e| b.contains(&e))
}

fn closure_dimensions(profile: Profile) -> Result<CheckResult, LabError> {
    let (ms, ps): (std::ops::RangeInclusive<usize>, &[u64]) = match profile {
        Profile::Quick => (2..=4, &[3, 5]),
        Profile::Full => (2..=6, &[3, 5, 7]),
    };
    let mut tried = 0usize;
    let mut failures = Vec::new();
    for m in ms {
        for &p in ps {
            tried += 1;
            let (z1, z2) = standard_generators(m, p)?;
            let dim = bracket_closure(&[z1, z2], m * m)?.dimension();
            if dim != m * m - 1 {
                failures.push(format!("(m, p) = ({m}, {p}) closed at {dim}"));
            }
        }
    }
    Ok(grid_result("bracket-closure-dimensions", tried, failures))
}

fn exp_log_round_trip() -> Result<CheckResult, LabError> {
    let cases = [(3u64, 2usize, 4u32), (5, 3, 3), (7, 2, 4)];
    let mut failures = Vec::new();
    for (p, m, n) in cases {
        let ctx = PadicContext::new(p, n)?;
        let (z1, z2) = action_adapted_pair(m, p)?;
        for (label, z) in [("z1", &z1), ("z2", &z2)] {
            let g = exp_mat(z, &ctx)?;
            if g.is_identity() {
                failures.push(format!("({p}, {m}, {n}) {label}: exp degenerated"));
                continue;
            }
            if log_mat(&g)?.to_padic(&ctx)? != z.to_padic(&ctx)? {
                failures.push(format!("({p}, {m}, {n}) {label}: log(exp) drifted"));
            }
        }
    }
    Ok(grid_result("exp-log-round-trip", cases.len() * 2, failures))
}

fn central_series_filtration(limits: &EnumerationLimits) -> Result<CheckResult, LabError> {
    let ctx = PadicContext::new(3, 3)?;
    let kernel = congruence_kernel(&ctx, 2, CongruenceLevel::Special { k: 1 }, limits)?;
    let series = p_central_series(&kernel, limits)?;
    let mut failures = Vec::new();
    if series.orders() != vec![729, 27, 1] {
        failures.push(format!("series orders {:?}", series.orders()));
    }
    for (n, term) in series.terms().iter().enumerate() {
        let level = congruence_kernel(&ctx, 2, CongruenceLevel::Special { k: n as u32 + 1 }, limits)?;
        if !same_group(term, &level) {
            failures.push(format!("term {} differs from the congruence kernel", n + 1));
        }
    }
    Ok(grid_result("central-series-filtration", 1 + series.len(), failures))
}

fn embedding_ingredients(limits: &EnumerationLimits) -> Result<CheckResult, LabError> {
    let ctx = PadicContext::new(3, 3)?;
    let kernel = congruence_kernel(&ctx, 2, CongruenceLevel::Special { k: 1 }, limits)?;
    let series = p_central_series(&kernel, limits)?;
    let (z1, z2) = action_adapted_pair(2, 3)?;
    let g1 = exp_mat(&z1, &ctx)?;
    let g2 = exp_mat(&z2, &ctx)?;
    let gprime = generated_subgroup(&ctx, &[g1, g2], limits)?;
    let rank = p_rank(&gprime, limits)?;
    let decalage = decalage_check(&gprime, &series, 1, limits)?;
    let stable = proper_solution_rank_check(&gprime, &series, 1, limits)?;
    let passed = rank == 2 && decalage.pass && stable;
    Ok(CheckResult::new(
        "embedding-ingredients",
        passed,
        format!(
            "(3, 2, 3): |G'| = {}, rank {rank}, filtration orders {:?}, decalage {}, rank stability {}",
            gprime.order(),
            decalage.level_orders,
            decalage.pass,
            stable
        ),
    ))
}

fn delta_action_table(profile: Profile) -> Result<CheckResult, LabError> {
    let max_m = match profile {
        Profile::Quick => 5,
        Profile::Full => 8,
    };
    let mut tried = 0usize;
    let mut failures = Vec::new();
    for m in 2..=max_m {
        for &p in &[5u64, 13] {
            tried += 1;
            let action = DeltaAction::quadratic(p, m)?;
            let (z1, z2) = action_adapted_pair(m, p)?;
            if !verify_delta_action(&action, &z1, &z2)?.pass {
                failures.push(format!("quadratic (p, m) = ({p}, {m})"));
            }
        }
    }
    for m in 3..=max_m {
        for &(p, a) in &[(13u64, 3u64), (17, 1)] {
            tried += 1;
            let action = DeltaAction::cyclotomic(p, m, a)?;
            let (z1, z2) = action_adapted_pair(m, p)?;
            if !verify_delta_action(&action, &z1, &z2)?.pass {
                failures.push(format!("cyclotomic (p, m, a) = ({p}, {m}, {a})"));
            }
        }
    }
    Ok(grid_result("delta-action-table", tried, failures))
}

fn exception_scan(profile: Profile) -> Result<CheckResult, LabError> {
    let (limit, expected): (u64, Vec<ExceptionRow>) = match profile {
        Profile::Quick => (300, vec![ExceptionRow { p: 257, k: 93 }]),
        Profile::Full => (
            12_000,
            vec![
                ExceptionRow { p: 257, k: 93 },
                ExceptionRow { p: 3329, k: 1951 },
                ExceptionRow { p: 11_777, k: 8879 },
            ],
        ),
    };
    let rows = scan_exception_table(limit, None)?;
    let passed = rows == expected;
    Ok(CheckResult::new(
        "exception-scan",
        passed,
        format!("limit {limit}: {} row(s), expected {}", rows.len(), expected.len()),
    ))
}

fn class_number_spots(profile: Profile) -> Result<CheckResult, LabError> {
    // Frozen against the Dirichlet class number formula.
    let spots = [
        (3u64, 1u64),
        (7, 1),
        (11, 1),
        (23, 3),
        (29, 6),
        (47, 5),
        (101, 14),
        (163, 1),
    ];
    let mut tried = spots.len();
    let mut failures = Vec::new();
    for (p, h) in spots {
        if imag_quadratic_class_number(p)?.h != h {
            failures.push(format!("h at p = {p}"));
        }
    }
    let route_bound = match profile {
        Profile::Quick => 200,
        Profile::Full => 1000,
    };
    for p in primes_up_to(route_bound) {
        if p < 5 {
            continue;
        }
        tried += 1;
        if !quadratic_route_check(p)? {
            failures.push(format!("route check rejected p = {p}"));
        }
    }
    Ok(grid_result("class-number-spots", tried, failures))
}

fn bernoulli_dual_method(profile: Profile) -> Result<CheckResult, LabError> {
    let bound = match profile {
        Profile::Quick => 500,
        Profile::Full => 5000,
    };
    let mut tried = 0usize;
    let mut failures = Vec::new();
    for p in primes_up_to(bound) {
        if p < 5 {
            continue;
        }
        tried += 1;
        let slow = irregular_report_with_method(p, BernoulliMethod::Recurrence)?;
        let fast = irregular_report_with_method(p, BernoulliMethod::PowerSum)?;
        if slow.class_char_indices() != fast.class_char_indices() {
            failures.push(format!("routes disagree at p = {p}"));
        }
    }
    Ok(grid_result("bernoulli-dual-method", tried, failures))
}

fn grid_result(name: &str, tried: usize, failures: Vec<String>) -> CheckResult {
    let passed = failures.is_empty();
    let detail = if passed {
        format!("{tried}/{tried} cases pass")
    } else {
        format!("{}/{tried} cases fail: {}", failures.len(), failures.join("; "))
    };
    CheckResult::new(name, passed, detail)
}

/// Runs every sweep of the given profile.
pub fn run_selftest(profile: Profile, limits: &EnumerationLimits) -> Result<SelfTestReport, LabError> {
    let checks = vec![
        closure_dimensions(profile)?,
        exp_log_round_trip()?,
        central_series_filtration(limits)?,
        embedding_ingredients(limits)?,
        delta_action_table(profile)?,
        exception_scan(profile)?,
        class_number_spots(profile)?,
        bernoulli_dual_method(profile)?,
    ];
    Ok(SelfTestReport { profile, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_profile_passes_everything() {
        let report = run_selftest(Profile::Quick, &EnumerationLimits::default()).unwrap();
        assert!(report.passed(), "{:#?}", report.checks());
        assert_eq!(report.checks().len(), 8);
        let value = report.to_json();
        assert_eq!(value["kind"], "selftest-report");
        assert_eq!(value["profile"], "quick");
        assert_eq!(value["passed"], true);
    }

    #[test]
    fn profile_parsing() {
        assert_eq!("quick".parse::<Profile>().unwrap(), Profile::Quick);
        assert_eq!("full".parse::<Profile>().unwrap(), Profile::Full);
        assert!("deep".parse::<Profile>().is_err());
    }
}
