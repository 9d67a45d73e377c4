//! Checkpointed scan for primes where the divisibility condition fails.
//!
//! The scan walks all primes `p == 1 mod 4` up to a limit, computes each
//! irregularity report, and collects the pairs `(p, k_i)` where the odd
//! part `a` of `p - 1` divides `k_i - 1` — the rare arithmetic accidents
//! that block the cyclotomic route at every dimension. Regular primes can
//! never appear (no `k_i` exists), so the table is sparse: three rows up
//! to 12000 and six up to 4*10^5.
//!
//! Long runs survive interruption through a JSON-lines checkpoint: one
//! line per processed prime, appended as batches finish. On restart the
//! file is replayed, a torn final line (a write cut short by a kill) is
//! dropped and recomputed, and only the missing primes are processed. All
//! integers in checkpoint lines are decimal strings, so consumers never
//! face 64-bit truncation. Within a batch the per-prime reports are
//! independent and computed in parallel; batches are written in prime
//! order, keeping the file deterministic.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::{BufWriter, Write as _};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eligibility::condition_ii_failures;
use crate::error::ArithmeticError;
use crate::irregular::{irregular_report, IrregularityReport};

/// One exception-table entry: condition (ii) fails at `k` for `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExceptionRow {
    /// The prime, `p == 1 mod 4`.
    pub p: u64,
    /// The class-character exponent with `a | (k - 1)`.
    pub k: u64,
}

/// How many primes one parallel batch processes between checkpoint writes.
const BATCH: usize = 16;

/// Primes up to `limit` inclusive, by a plain sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for q in 2..=n {
        if !composite[q] {
            out.push(q as u64);
            let mut multiple = q * q;
            while multiple <= n {
                composite[multiple] = true;
                multiple += q;
            }
        }
    }
    out
}

/// One checkpoint line. Every integer is a decimal string by contract.
#[derive(Debug, Serialize, Deserialize)]
struct CheckpointLine {
    p: String,
    e: String,
    k_indices: Vec<String>,
    lambda: String,
    a: String,
    cond_ii_fails: Vec<String>,
}

impl CheckpointLine {
    fn of(report: &IrregularityReport, fails: &[u64]) -> Self {
        Self {
            p: report.p().to_string(),
            e: report.e().to_string(),
            k_indices: report.class_char_indices().iter().map(u64::to_string).collect(),
            lambda: report.lambda().to_string(),
            a: report.a().to_string(),
            cond_ii_fails: fails.iter().map(u64::to_string).collect(),
        }
    }

    /// Parses and cross-validates a line, returning `(p, failing indices)`.
    fn decode(text: &str) -> Option<(u64, Vec<u64>)> {
        let line: CheckpointLine = serde_json::from_str(text).ok()?;
        let p: u64 = line.p.parse().ok()?;
        let e: usize = line.e.parse().ok()?;
        let lambda: u32 = line.lambda.parse().ok()?;
        let a: u64 = line.a.parse().ok()?;
        let k_indices: Vec<u64> =
            line.k_indices.iter().map(|s| s.parse().ok()).collect::<Option<_>>()?;
        let fails: Vec<u64> =
            line.cond_ii_fails.iter().map(|s| s.parse().ok()).collect::<Option<_>>()?;
        // Integrity checks: the factorization must reproduce p - 1, the
        // count must match, and the failures must be reported indices.
        if a.checked_mul(1u64.checked_shl(lambda)?)? != p.checked_sub(1)? {
            return None;
        }
        if e != k_indices.len() || !fails.iter().all(|k| k_indices.contains(k)) {
            return None;
        }
        Some((p, fails))
    }
}

/// Scans all primes `p == 1 mod 4` with `5 <= p <= limit` and returns the
/// `(p, k)` pairs where `a | (k - 1)`, sorted by `p` then `k`.
///
/// With a checkpoint path the scan appends one JSON line per prime as it
/// goes and resumes from whatever the file already covers.
pub fn scan_exception_table(
    limit: u64,
    checkpoint: Option<&Path>,
) -> Result<Vec<ExceptionRow>, ArithmeticError> {
    if limit < 5 {
        return Err(ArithmeticError::LimitTooSmall(limit));
    }

    let mut done: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    if let Some(path) = checkpoint {
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            let bytes = text.as_bytes();
            let lines: Vec<&str> = text.lines().collect();
            let mut cursor = 0usize;
            let mut valid_end = 0u64;
            let mut torn_tail = false;
            for (index, line) in lines.iter().enumerate() {
                let mut end = cursor + line.len();
                if bytes.get(end) == Some(&b'\n') {
                    end += 1;
                }
                match CheckpointLine::decode(line) {
                    Some((p, fails)) => {
                        done.insert(p, fails);
                        valid_end = end as u64;
                    }
                    // A torn final line is the signature of an interrupted
                    // write: drop it and recompute that prime. Anything
                    // else is real corruption.
                    None if index + 1 == lines.len() => torn_tail = true,
                    None => {
                        return Err(ArithmeticError::CorruptCheckpoint(format!(
                            "line {} does not parse",
                            index + 1
                        )));
                    }
                }
                cursor = end;
            }
            if torn_tail {
                // Cut the fragment off so appended lines start clean.
                OpenOptions::new().write(true).open(path)?.set_len(valid_end)?;
            }
        }
    }

    let pending: Vec<u64> = primes_up_to(limit)
        .into_iter()
        .filter(|&p| p % 4 == 1 && !done.contains_key(&p))
        .collect();

    let mut writer = match checkpoint {
        Some(path) => {
            let file = OpenOptions::new().create(true).append(true).open(path)?;
            Some(BufWriter::new(file))
        }
        None => None,
    };

    for batch in pending.chunks(BATCH) {
        let results: Result<Vec<(IrregularityReport, Vec<u64>)>, ArithmeticError> = batch
            .par_iter()
            .map(|&p| {
                let report = irregular_report(p)?;
                let fails = condition_ii_failures(&report);
                Ok((report, fails))
            })
            .collect();
        for (report, fails) in results? {
            if let Some(w) = writer.as_mut() {
                let line = serde_json::to_string(&CheckpointLine::of(&report, &fails))?;
                writeln!(w, "{line}")?;
            }
            done.insert(report.p(), fails);
        }
        if let Some(w) = writer.as_mut() {
            w.flush()?;
        }
    }

    let mut rows: Vec<ExceptionRow> = done
        .range(..=limit)
        .filter(|&(&p, _)| p % 4 == 1)
        .flat_map(|(&p, fails)| fails.iter().map(move |&k| ExceptionRow { p, k }))
        .collect();
    rows.sort_unstable();
    Ok(rows)
}
