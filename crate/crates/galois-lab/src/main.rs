//! Binary entry point: argument parsing, JSON emission, human rendering,
//! and the stable exit-code contract (0 success, 1 verification failure,
//! 2 usage error).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use arithmetic_criteria::{
    check_theorem_conditions, condition_ii_failures, imag_quadratic_class_number,
    irregular_report, scan_exception_table, Verdict,
};
use uniform_groups::EnumerationLimits;

use galois_lab::{generate_witness, render_checks, run_selftest, LabError, Profile};

/// Environment variable overriding the enumeration element guard.
const MAX_ELEMENTS_ENV: &str = "GALOIS_LAB_MAX_ELEMENTS";

#[derive(Parser)]
#[command(
    name = "galois-lab",
    version,
    about = "Eligibility arithmetic, exception scans, and witness certificates \
             for p-adic matrix group constructions"
)]
struct Cli {
    /// Emit machine-readable JSON instead of the human summary.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the route and eligibility arithmetic at a prime.
    CheckPrime {
        /// The prime to analyze.
        p: u64,
        /// Evaluate the two theorem conditions at this dimension.
        #[arg(long)]
        m: Option<u64>,
    },
    /// Scan primes p = 1 mod 4 for exceptional (p, k) rows.
    Scan {
        /// Upper bound on the primes scanned (inclusive).
        #[arg(long, default_value_t = 1000)]
        limit: u64,
        /// JSON-lines checkpoint file for resumable scans.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Worker threads for the scan (defaults to all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Generate and verify a witness certificate for (p, m).
    Witness {
        /// The prime.
        p: u64,
        /// The matrix dimension.
        m: usize,
        /// Working precision N (digits of p).
        #[arg(default_value_t = 4)]
        n: u32,
        /// Override the working precision.
        #[arg(short = 'N', long = "precision")]
        precision: Option<u32>,
        /// Emit the certificate even when (p, m) is ineligible.
        #[arg(long)]
        force: bool,
    },
    /// Run the cross-crate consistency sweeps.
    Selftest {
        /// Sweep width: quick (under a minute) or full (several minutes).
        #[arg(long, default_value = "quick")]
        profile: Profile,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, LabError> {
    let limits = effective_limits()?;
    match cli.command {
        Command::CheckPrime { p, m } => {
            let value = check_prime_json(p, m)?;
            emit(&value, cli.json, human_check_prime);
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan { limit, checkpoint, jobs } => {
            if let Some(jobs) = jobs {
                if jobs == 0 {
                    return Err(LabError::BadInput("--jobs must be at least 1".into()));
                }
                // Ignore the error if a global pool already exists.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
            }
            let value = scan_json(limit, checkpoint.as_deref())?;
            emit(&value, cli.json, human_scan);
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness { p, m, n, precision, force } => {
            let cert = generate_witness(p, m, precision.unwrap_or(n), &limits, force)?;
            emit(&cert.to_json(), cli.json, human_witness);
            if !cert.verified() {
                eprintln!("warning: certificate emitted with failing checks");
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { profile } => {
            let report = run_selftest(profile, &limits)?;
            emit(&report.to_json(), cli.json, human_selftest);
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn effective_limits() -> Result<EnumerationLimits, LabError> {
    let mut limits = EnumerationLimits::default();
    if let Ok(raw) = std::env::var(MAX_ELEMENTS_ENV) {
        limits.max_elements = raw.parse().map_err(|_| {
            LabError::BadInput(format!("{MAX_ELEMENTS_ENV} = {raw:?} is not a valid element count"))
        })?;
    }
    Ok(limits)
}

fn emit(value: &Value, as_json: bool, human: impl Fn(&Value) -> String) {
    if as_json {
        println!("{}", serde_json::to_string(value).expect("report serializes"));
    } else {
        println!("{}", human(value));
    }
}

fn verdict_label(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::Eligible => "eligible",
        Verdict::BlockedByI => "blocked_by_i",
        Verdict::BlockedByII => "blocked_by_ii",
        Verdict::OutOfTheorem => "out_of_theorem",
    }
}

fn string_list(values: &[u64]) -> Value {
    Value::Array(values.iter().map(|v| json!(v.to_string())).collect())
}

fn check_prime_json(p: u64, m: Option<u64>) -> Result<Value, LabError> {
    if p == 2 {
        return Err(LabError::BadInput("p = 2 is outside both construction routes".into()));
    }
    let mut map = Map::new();
    map.insert("kind".into(), json!("check-prime"));
    map.insert("p".into(), json!(p.to_string()));
    if p % 4 == 3 {
        let cls = imag_quadratic_class_number(p)?;
        let eligible = cls.h % p != 0;
        map.insert("route".into(), json!("quadratic"));
        map.insert("discriminant".into(), json!(cls.discriminant.to_string()));
        map.insert("class_number".into(), json!(cls.h.to_string()));
        map.insert("eligible".into(), json!(eligible));
        map.insert(
            "eligible_m".into(),
            json!(if eligible { "all m >= 1" } else { "none" }),
        );
        if let Some(m) = m {
            map.insert("m".into(), json!(m.to_string()));
        }
    } else {
        let report = irregular_report(p)?;
        let fails = condition_ii_failures(&report);
        map.insert("route".into(), json!("cyclotomic"));
        map.insert("lambda".into(), json!(report.lambda().to_string()));
        map.insert("a".into(), json!(report.a().to_string()));
        map.insert("regular".into(), json!(report.is_regular()));
        map.insert("irregular_indices".into(), string_list(report.class_char_indices()));
        map.insert("condition_ii_failures".into(), string_list(&fails));
        let modulus = 1u64 << report.lambda();
        map.insert("m_class_modulus".into(), json!(modulus.to_string()));
        let classes: &[u64] = if fails.is_empty() { &[1, 2] } else { &[] };
        map.insert("eligible_m_classes".into(), string_list(classes));
        if let Some(m) = m {
            let eligibility = check_theorem_conditions(p, m)?;
            map.insert("m".into(), json!(m.to_string()));
            map.insert("verdict".into(), json!(verdict_label(eligibility.verdict())));
            let cond_i = eligibility.cond_i();
            map.insert(
                "condition_i".into(),
                json!({
                    "holds": cond_i.holds,
                    "shifted_dimension": cond_i.shifted_dimension.to_string(),
                    "valuation": cond_i.valuation.to_string(),
                    "lambda": cond_i.lambda.to_string(),
                }),
            );
            let cond_ii = eligibility.cond_ii();
            map.insert(
                "condition_ii".into(),
                json!({
                    "holds": cond_ii.holds,
                    "failing_indices": string_list(&cond_ii.failing_indices),
                }),
            );
        }
    }
    Ok(Value::Object(map))
}

fn scan_json(limit: u64, checkpoint: Option<&std::path::Path>) -> Result<Value, LabError> {
    let rows = scan_exception_table(limit, checkpoint)?;
    let mut map = Map::new();
    map.insert("kind".into(), json!("scan-report"));
    map.insert("limit".into(), json!(limit.to_string()));
    map.insert(
        "rows".into(),
        Value::Array(
            rows.iter()
                .map(|row| json!({"p": row.p.to_string(), "k": row.k.to_string()}))
                .collect(),
        ),
    );
    map.insert("count".into(), json!(rows.len().to_string()));
    Ok(Value::Object(map))
}

fn field<'a>(value: &'a Value, key: &str) -> &'a str {
    value.get(key).and_then(Value::as_str).unwrap_or("?")
}

fn joined_list(value: &Value, key: &str) -> String {
    let items: Vec<&str> = value
        .get(key)
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_str).collect())
        .unwrap_or_default();
    format!("[{}]", items.join(", "))
}

fn human_check_prime(value: &Value) -> String {
    let p = field(value, "p");
    let mut out = String::new();
    if field(value, "route") == "quadratic" {
        out.push_str(&format!("prime {p}: quadratic route\n"));
        out.push_str(&format!(
            "  discriminant {}, class number {}\n",
            field(value, "discriminant"),
            field(value, "class_number")
        ));
        let eligible = value["eligible"].as_bool().unwrap_or(false);
        out.push_str(&format!(
            "  eligible: {} ({})",
            if eligible { "yes" } else { "no" },
            field(value, "eligible_m")
        ));
    } else {
        out.push_str(&format!("prime {p}: cyclotomic route\n"));
        out.push_str(&format!(
            "  lambda = {}, odd part a = {}, irregular indices {}\n",
            field(value, "lambda"),
            field(value, "a"),
            joined_list(value, "irregular_indices")
        ));
        let classes = joined_list(value, "eligible_m_classes");
        if classes == "[]" {
            out.push_str(&format!(
                "  condition (ii) fails at k in {}; no eligible dimensions",
                joined_list(value, "condition_ii_failures")
            ));
        } else {
            out.push_str(&format!(
                "  eligible dimensions: m = {} mod {}",
                classes,
                field(value, "m_class_modulus")
            ));
        }
        if value.get("m").is_some() {
            out.push_str(&format!(
                "\n  at m = {}: verdict {}",
                field(value, "m"),
                field(value, "verdict")
            ));
        }
    }
    out
}

fn human_scan(value: &Value) -> String {
    let rows = value.get("rows").and_then(Value::as_array).cloned().unwrap_or_default();
    let mut out = format!(
        "scan through {}: {} exceptional row(s)",
        field(value, "limit"),
        field(value, "count")
    );
    for row in &rows {
        out.push_str(&format!("\n  p = {}, k = {}", field(row, "p"), field(row, "k")));
    }
    out
}

fn checks_from(value: &Value) -> Vec<galois_lab::CheckResult> {
    value
        .get("checks")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(galois_lab::CheckResult::from_json).collect())
        .unwrap_or_default()
}

fn human_witness(value: &Value) -> String {
    let mut out = format!(
        "witness certificate: p = {}, m = {}, precision {}, {} route",
        field(value, "p"),
        field(value, "m"),
        field(value, "precision"),
        field(value, "route")
    );
    if let Some(a) = value.get("twist_a").and_then(Value::as_str) {
        out.push_str(&format!(" (twist a = {a})"));
    }
    out.push('\n');
    out.push_str(&render_checks(&checks_from(value)));
    let verified = value["verified"].as_bool().unwrap_or(false);
    out.push_str(&format!("\nverified: {}", if verified { "yes" } else { "no" }));
    out
}

fn human_selftest(value: &Value) -> String {
    let mut out = format!("self-test ({} profile)\n", field(value, "profile"));
    out.push_str(&render_checks(&checks_from(value)));
    let passed = value["passed"].as_bool().unwrap_or(false);
    out.push_str(&format!("\nresult: {}", if passed { "pass" } else { "fail" }));
    out
}
