//! Command-line laboratory over the p-adic matrix stack.
//!
//! The library half of the `galois-lab` binary: witness certificates
//! (generation, serialization, re-verification), the cross-crate self-test
//! sweeps, and the shared check/report plumbing. The binary in `main.rs`
//! adds argument parsing and human rendering on top; every command's
//! machine output is JSON built here, so the two faces cannot drift.

pub mod certificate;
pub mod error;
pub mod report;
pub mod selftest;

pub use certificate::{
    generate_witness, Route, WitnessCertificate, MAX_WITNESS_DIMENSION, MAX_WITNESS_PRECISION,
    MIN_WITNESS_PRECISION,
};
pub use error::LabError;
pub use report::{render_checks, CheckResult};
pub use selftest::{run_selftest, Profile, SelfTestReport};
