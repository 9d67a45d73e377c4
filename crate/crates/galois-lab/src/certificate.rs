//! Witness certificates: self-contained bundles proving the constructive
//! hypotheses at one `(p, m)`.
//!
//! A certificate packages the adapted generator pair `z1, z2` of the
//! powerful algebra, their exponentials `g1, g2` modulo `p^N`, the
//! Δ-action representative, and a list of named verifications:
//!
//! * `eligibility` — the arithmetic route test (class number coprimality
//!   for `p == 3 mod 4`, the two cyclotomic conditions for `p == 1 mod 4`);
//! * `generation-dimension` — the bracket closure of the pair spans the
//!   full traceless algebra, dimension `m^2 - 1`;
//! * `action-eigenvalues` — the action multiplies each generator by its
//!   expected sign or character exponent, and the stored representative
//!   matches the action;
//! * `exp-log-round-trip` — `exp(z_i) = g_i` and `log(g_i) = z_i` exactly
//!   at the working precision;
//! * `p-rank` — the generators are independent on the first algebra layer,
//!   which pins the rank of the generated pro-p group to exactly 2; when
//!   the congruence-kernel bound fits the enumeration guard, an honest
//!   finite-group rank computation cross-checks this at the deepest
//!   feasible precision.
//!
//! Everything a verifier needs is in the serialized form; `verify`
//! recomputes every check from the stored matrices alone, so a parsed
//! certificate reproduces the exact pass/fail vector it was born with —
//! or exposes tampering.

use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};

use arithmetic_criteria::{
    check_theorem_conditions, imag_quadratic_class_number, Verdict, MAX_BERNOULLI_PRIME,
};
use delta_characters::{action_adapted_pair, verify_delta_action, DeltaAction};
use lie_matrix::{bracket_closure, LieElement};
use padic_core::{is_prime, mod_inv_u64, PadicContext, PadicMatrix};
use uniform_groups::{exp_mat, generated_subgroup, log_mat, p_rank, EnumerationLimits};

use crate::error::LabError;
use crate::report::CheckResult;

/// Smallest useful working precision: below 2 the first algebra layer is
/// invisible and every exponential collapses to the identity.
pub const MIN_WITNESS_PRECISION: u32 = 2;
/// Overflow guard on the working precision.
pub const MAX_WITNESS_PRECISION: u32 = 64;
/// Cap on the matrix dimension; the rational echelon work in the bracket
/// closure grows like `m^6`.
pub const MAX_WITNESS_DIMENSION: usize = 10;

/// Which construction route a certificate claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// The imaginary-quadratic route (`p == 3 mod 4`), hinging on `p` being
    /// coprime to the class number of `Q(sqrt(-p))`.
    Quadratic,
    /// The cyclotomic route (`p == 1 mod 4`) with twist exponent `a`, the
    /// odd part of `p - 1`.
    Cyclotomic {
        /// The twist exponent.
        a: u64,
    },
}

/// A self-contained witness bundle for one `(p, m)` at precision `N`.
#[derive(Clone, Debug)]
pub struct WitnessCertificate {
    p: u64,
    m: usize,
    route: Route,
    precision: u32,
    z1: LieElement,
    z2: LieElement,
    g1: PadicMatrix,
    g2: PadicMatrix,
    action_matrix: Vec<BigUint>,
    checks: Vec<CheckResult>,
    generated_at_unix: u64,
}

fn validate_witness_inputs(p: u64, m: usize, precision: u32) -> Result<(), LabError> {
    if !is_prime(p) {
        return Err(LabError::BadInput(format!("p = {p} is not prime")));
    }
    if p == 2 {
        return Err(LabError::BadInput(
            "the construction routes cover odd primes only".into(),
        ));
    }
    if m < 2 {
        return Err(LabError::BadInput(format!("m = {m} is too small; need m >= 2")));
    }
    if m > MAX_WITNESS_DIMENSION {
        return Err(LabError::BadInput(format!(
            "m = {m} exceeds the witness dimension cap {MAX_WITNESS_DIMENSION}"
        )));
    }
    if p % 4 == 1 && m < 3 {
        return Err(LabError::BadInput(
            "the cyclotomic route needs m >= 3; m = 2 certificates live on the quadratic route"
                .into(),
        ));
    }
    if p % 4 == 1 && p > MAX_BERNOULLI_PRIME {
        return Err(LabError::BadInput(format!(
            "p = {p} exceeds the eligibility bound {MAX_BERNOULLI_PRIME} for the cyclotomic route"
        )));
    }
    if !(MIN_WITNESS_PRECISION..=MAX_WITNESS_PRECISION).contains(&precision) {
        return Err(LabError::BadInput(format!(
            "precision N = {precision} is outside [{MIN_WITNESS_PRECISION}, {MAX_WITNESS_PRECISION}]"
        )));
    }
    Ok(())
}

/// The canonical route at `p` and its eligibility check at dimension `m`.
fn route_and_eligibility(p: u64, m: usize) -> Result<(Route, CheckResult), LabError> {
    if p % 4 == 3 {
        let result = imag_quadratic_class_number(p)?;
        let passed = result.h % p != 0;
        let detail = format!(
            "quadratic route: h({}) = {}, {} p = {p}",
            result.discriminant,
            result.h,
            if passed { "coprime to" } else { "divisible by" },
        );
        Ok((Route::Quadratic, CheckResult::new("eligibility", passed, detail)))
    } else {
        let report = check_theorem_conditions(p, m as u64)?;
        let a = report.irregularity().a();
        let passed = report.verdict() == Verdict::Eligible;
        let detail = format!(
            "cyclotomic route: verdict {:?}; lambda = {}, v2({}) = {}, a = {}, k = {:?}",
            report.verdict(),
            report.cond_i().lambda,
            report.cond_i().shifted_dimension,
            report.cond_i().valuation,
            a,
            report.irregularity().class_char_indices(),
        );
        Ok((Route::Cyclotomic { a }, CheckResult::new("eligibility", passed, detail)))
    }
}

fn route_action(p: u64, m: usize, route: Route) -> Result<DeltaAction, LabError> {
    let action = match route {
        Route::Quadratic => DeltaAction::quadratic(p, m)?,
        Route::Cyclotomic { a } => DeltaAction::cyclotomic(p, m, a)?,
    };
    Ok(action)
}

/// The action representative as a full `m x m` flat matrix.
fn embed_diagonal(m: usize, diagonal: &[BigUint]) -> Vec<BigUint> {
    let mut flat = vec![BigUint::from(0u32); m * m];
    for (i, d) in diagonal.iter().enumerate() {
        flat[i * m + i] = d.clone();
    }
    flat
}

/// Rank over `F_p` of the two first-layer images `z_i / p^(1+eps) mod p`.
fn first_layer_rank(z1: &LieElement, z2: &LieElement, p: u64) -> Option<u32> {
    let u = z1.fp_image(0)?;
    let v = z2.fp_image(0)?;
    let u_zero = u.iter().all(|&x| x == 0);
    let v_zero = v.iter().all(|&x| x == 0);
    if u_zero && v_zero {
        return Some(0);
    }
    if u_zero || v_zero {
        return Some(1);
    }
    let pivot = u.iter().position(|&x| x != 0).expect("nonzero vector");
    let scale = v[pivot] as u128 * mod_inv_u64(u[pivot], p)? as u128 % p as u128;
    let proportional =
        u.iter().zip(&v).all(|(&a, &b)| (scale * a as u128) % p as u128 == b as u128);
    Some(if proportional { 1 } else { 2 })
}

/// The deepest precision at which the congruence-kernel order bound
/// `p^((m^2-1)(n-1))` fits under the element guard, if any.
fn enumeration_precision(p: u64, m: usize, precision: u32, max_elements: usize) -> Option<u32> {
    let dim_exp = (m * m - 1) as u32;
    (2..=precision).rev().find(|&n| {
        dim_exp
            .checked_mul(n - 1)
            .and_then(|e| (p as u128).checked_pow(e))
            .is_some_and(|bound| bound <= max_elements as u128)
    })
}

/// The four algebra checks, computed from the given matrices alone.
#[allow(clippy::too_many_arguments)]
fn algebra_checks(
    ctx: &PadicContext,
    m: usize,
    route: Route,
    z1: &LieElement,
    z2: &LieElement,
    g1: &PadicMatrix,
    g2: &PadicMatrix,
    action_matrix: &[BigUint],
    limits: &EnumerationLimits,
) -> Result<Vec<CheckResult>, LabError> {
    let p = ctx.p();
    let mut checks = Vec::new();

    // Generation dimension.
    let basis = bracket_closure(&[z1.clone(), z2.clone()], m * m)?;
    let want = m * m - 1;
    checks.push(CheckResult::new(
        "generation-dimension",
        basis.dimension() == want,
        format!("bracket closure has dimension {} (expected {want})", basis.dimension()),
    ));

    // Action eigenvalues, plus consistency of the stored representative.
    let action = route_action(p, m, route)?;
    let action_report = verify_delta_action(&action, z1, z2)?;
    let representative_ok = action_matrix == embed_diagonal(m, &action.diagonal_mod(ctx.modulus()));
    let pattern = match route {
        Route::Quadratic => {
            let (s1, s2) = action.expected_signs().expect("quadratic action");
            format!("signs ({s1:+}, {s2:+})")
        }
        Route::Cyclotomic { a } => {
            let (e1, e2) = action.expected_exponents().expect("cyclotomic action");
            format!("twist {a}: exponents ({e1}, {e2}) mod {}", p - 1)
        }
    };
    let mut detail = pattern;
    if !action_report.pass {
        let failed: Vec<&str> = action_report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        detail.push_str(&format!("; failed: {failed:?}"));
    }
    if !representative_ok {
        detail.push_str("; stored action matrix disagrees with the action");
    }
    checks.push(CheckResult::new(
        "action-eigenvalues",
        action_report.pass && representative_ok,
        detail,
    ));

    // exp/log round trip against the stored group elements. A tampered
    // matrix may fall outside the logarithm domain; that is a failed
    // check, not an execution error.
    let exp_ok = exp_mat(z1, ctx)? == *g1 && exp_mat(z2, ctx)? == *g2;
    let mut round_ok = true;
    let mut domain_note = String::new();
    for (label, g, z) in [("g1", g1, z1), ("g2", g2, z2)] {
        match log_mat(g) {
            Ok(logarithm) => {
                if logarithm.to_padic(ctx)? != z.to_padic(ctx)? {
                    round_ok = false;
                }
            }
            Err(_) => {
                round_ok = false;
                domain_note.push_str(&format!("; {label} is outside the logarithm domain"));
            }
        }
    }
    checks.push(CheckResult::new(
        "exp-log-round-trip",
        exp_ok && round_ok,
        format!(
            "exp(z_i) = g_i: {exp_ok}; log(g_i) = z_i mod p^{}: {round_ok}{domain_note}",
            ctx.precision()
        ),
    ));

    // p-rank: first-layer independence pins the rank of a two-generated
    // group to exactly 2; enumerate and cross-check when feasible.
    let layer_rank = first_layer_rank(z1, z2, p);
    let independent = layer_rank == Some(2);
    let mut rank_detail = match layer_rank {
        Some(r) => format!("first-layer rank {r} (need 2)"),
        None => "first algebra layer undefined".to_string(),
    };
    let mut rank_ok = independent;
    match enumeration_precision(p, m, ctx.precision(), limits.max_elements) {
        Some(depth) => {
            let shallow = ctx.with_precision(depth)?;
            let h1 = exp_mat(z1, &shallow)?;
            let h2 = exp_mat(z2, &shallow)?;
            let group = generated_subgroup(&shallow, &[h1, h2], limits)?;
            let rank = p_rank(&group, limits)?;
            rank_ok &= rank == 2;
            rank_detail.push_str(&format!(
                "; enumeration cross-check at precision {depth}: order {}, rank {rank}",
                group.order()
            ));
        }
        None => {
            rank_detail
                .push_str("; enumeration cross-check skipped (kernel bound exceeds the guard)");
        }
    }
    checks.push(CheckResult::new("p-rank", rank_ok, rank_detail));

    Ok(checks)
}

/// Builds and fully verifies a witness certificate.
///
/// Ineligible `(p, m)` are refused unless `force` is set, in which case
/// the failed `eligibility` check rides along in the certificate.
pub fn generate_witness(
    p: u64,
    m: usize,
    precision: u32,
    limits: &EnumerationLimits,
    force: bool,
) -> Result<WitnessCertificate, LabError> {
    validate_witness_inputs(p, m, precision)?;
    let (route, eligibility) = route_and_eligibility(p, m)?;
    if !eligibility.passed && !force {
        return Err(LabError::Refused { reason: eligibility.detail });
    }
    let ctx = PadicContext::new(p, precision)?;
    let (z1, z2) = action_adapted_pair(m, p)?;
    let g1 = exp_mat(&z1, &ctx)?;
    let g2 = exp_mat(&z2, &ctx)?;
    let action = route_action(p, m, route)?;
    let action_matrix = embed_diagonal(m, &action.diagonal_mod(ctx.modulus()));
    let mut certificate = WitnessCertificate {
        p,
        m,
        route,
        precision,
        z1,
        z2,
        g1,
        g2,
        action_matrix,
        checks: Vec::new(),
        generated_at_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    certificate.checks = certificate.verify(limits)?;
    Ok(certificate)
}

impl WitnessCertificate {
    /// The prime.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The matrix dimension.
    pub fn m(&self) -> usize {
        self.m
    }

    /// The claimed route.
    pub fn route(&self) -> Route {
        self.route
    }

    /// The working precision `N`.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// The stored checks, in generation order.
    pub fn checks(&self) -> &[CheckResult] {
        &self.checks
    }

    /// Whether every stored check passed.
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Recomputes the full check list from the stored data alone.
    pub fn verify(&self, limits: &EnumerationLimits) -> Result<Vec<CheckResult>, LabError> {
        let ctx = PadicContext::new(self.p, self.precision)?;
        let (canonical_route, mut eligibility) = route_and_eligibility(self.p, self.m)?;
        if canonical_route != self.route {
            eligibility.passed = false;
            eligibility.detail.push_str("; stored route disagrees with p mod 4");
        }
        let mut checks = vec![eligibility];
        checks.extend(algebra_checks(
            &ctx,
            self.m,
            self.route,
            &self.z1,
            &self.z2,
            &self.g1,
            &self.g2,
            &self.action_matrix,
            limits,
        )?);
        Ok(checks)
    }

    /// Whether a re-verification reproduces the stored pass/fail vector.
    pub fn reverify_matches(&self, limits: &EnumerationLimits) -> Result<bool, LabError> {
        let fresh = self.verify(limits)?;
        Ok(fresh.len() == self.checks.len()
            && fresh
                .iter()
                .zip(&self.checks)
                .all(|(a, b)| a.name == b.name && a.passed == b.passed))
    }

    /// Serializes to the canonical JSON form (all integers as decimal
    /// strings, matrices flat row-major).
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("kind".into(), json!("witness-certificate"));
        map.insert("p".into(), json!(self.p.to_string()));
        map.insert("m".into(), json!(self.m.to_string()));
        map.insert("precision".into(), json!(self.precision.to_string()));
        match self.route {
            Route::Quadratic => {
                map.insert("route".into(), json!("quadratic"));
            }
            Route::Cyclotomic { a } => {
                map.insert("route".into(), json!("cyclotomic"));
                map.insert("twist_a".into(), json!(a.to_string()));
            }
        }
        map.insert("z1".into(), bigint_strings(self.z1.entries()));
        map.insert("z2".into(), bigint_strings(self.z2.entries()));
        map.insert("g1".into(), biguint_strings(self.g1.entries()));
        map.insert("g2".into(), biguint_strings(self.g2.entries()));
        map.insert("action_matrix".into(), biguint_strings(&self.action_matrix));
        map.insert(
            "checks".into(),
            Value::Array(self.checks.iter().map(CheckResult::to_json).collect()),
        );
        map.insert("verified".into(), json!(self.verified()));
        map.insert("generated_at_unix".into(), json!(self.generated_at_unix.to_string()));
        Value::Object(map)
    }

    /// Parses the canonical JSON form back into a certificate.
    pub fn from_json(text: &str) -> Result<Self, LabError> {
        let value: Value = serde_json::from_str(text)?;
        if value.get("kind").and_then(Value::as_str) != Some("witness-certificate") {
            return Err(LabError::BadCertificate("missing certificate kind marker".into()));
        }
        let p: u64 = parse_str_field(&value, "p")?;
        let m: usize = parse_str_field(&value, "m")?;
        let precision: u32 = parse_str_field(&value, "precision")?;
        validate_witness_inputs(p, m, precision)?;
        let route = match value.get("route").and_then(Value::as_str) {
            Some("quadratic") => Route::Quadratic,
            Some("cyclotomic") => Route::Cyclotomic { a: parse_str_field(&value, "twist_a")? },
            other => {
                return Err(LabError::BadCertificate(format!("unknown route {other:?}")));
            }
        };
        let ctx = PadicContext::new(p, precision)?;
        let z1 = lie_from_strings(p, m, &string_array(&value, "z1")?, "z1")?;
        let z2 = lie_from_strings(p, m, &string_array(&value, "z2")?, "z2")?;
        let g1 = matrix_from_strings(&ctx, m, &string_array(&value, "g1")?, "g1")?;
        let g2 = matrix_from_strings(&ctx, m, &string_array(&value, "g2")?, "g2")?;
        let action_matrix = residues_from_strings(&ctx, &string_array(&value, "action_matrix")?, "action_matrix")?;
        if action_matrix.len() != m * m {
            return Err(LabError::BadCertificate("action matrix has the wrong size".into()));
        }
        let checks = value
            .get("checks")
            .and_then(Value::as_array)
            .ok_or_else(|| LabError::BadCertificate("missing checks array".into()))?
            .iter()
            .map(|c| {
                CheckResult::from_json(c)
                    .ok_or_else(|| LabError::BadCertificate("malformed check entry".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let generated_at_unix: u64 = parse_str_field(&value, "generated_at_unix")?;
        Ok(WitnessCertificate {
            p,
            m,
            route,
            precision,
            z1,
            z2,
            g1,
            g2,
            action_matrix,
            checks,
            generated_at_unix,
        })
    }
}

fn bigint_strings(entries: &[BigInt]) -> Value {
    Value::Array(entries.iter().map(|e| json!(e.to_string())).collect())
}

fn biguint_strings(entries: &[BigUint]) -> Value {
    Value::Array(entries.iter().map(|e| json!(e.to_string())).collect())
}

fn parse_str_field<T: FromStr>(value: &Value, key: &str) -> Result<T, LabError> {
    value
        .get(key)
        .and_then(Value::as_str)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| LabError::BadCertificate(format!("field {key} is missing or malformed")))
}

fn string_array(value: &Value, key: &str) -> Result<Vec<String>, LabError> {
    value
        .get(key)
        .and_then(Value::as_array)
        .map(|entries| {
            entries
                .iter()
                .map(|e| {
                    e.as_str().map(str::to_string).ok_or_else(|| {
                        LabError::BadCertificate(format!("{key} holds a non-string entry"))
                    })
                })
                .collect()
        })
        .ok_or_else(|| LabError::BadCertificate(format!("field {key} is missing")))?
}

fn lie_from_strings(
    p: u64,
    m: usize,
    entries: &[String],
    key: &str,
) -> Result<LieElement, LabError> {
    if entries.len() != m * m {
        return Err(LabError::BadCertificate(format!("{key} has the wrong size")));
    }
    let parsed = entries
        .iter()
        .map(|s| BigInt::from_str(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| LabError::BadCertificate(format!("{key} holds a non-integer entry")))?;
    LieElement::new(p, m, parsed).map_err(|e| LabError::BadCertificate(format!("{key}: {e}")))
}

fn residues_from_strings(
    ctx: &PadicContext,
    entries: &[String],
    key: &str,
) -> Result<Vec<BigUint>, LabError> {
    entries
        .iter()
        .map(|s| {
            let residue = BigUint::from_str(s).map_err(|_| {
                LabError::BadCertificate(format!("{key} holds a non-residue entry"))
            })?;
            if residue >= *ctx.modulus() {
                return Err(LabError::BadCertificate(format!(
                    "{key} holds an entry outside the residue range"
                )));
            }
            Ok(residue)
        })
        .collect()
}

fn matrix_from_strings(
    ctx: &PadicContext,
    m: usize,
    entries: &[String],
    key: &str,
) -> Result<PadicMatrix, LabError> {
    if entries.len() != m * m {
        return Err(LabError::BadCertificate(format!("{key} has the wrong size")));
    }
    let residues = residues_from_strings(ctx, entries, key)?;
    PadicMatrix::from_residues(ctx, m, residues)
        .map_err(|e| LabError::BadCertificate(format!("{key}: {e}")))
}
