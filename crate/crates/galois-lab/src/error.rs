use thiserror::Error;

/// Errors surfaced by the command-line layer.
#[derive(Debug, Error)]
pub enum LabError {
    /// A malformed or out-of-range input (maps to the usage exit code).
    #[error("{0}")]
    BadInput(String),

    /// The eligibility gate declined to emit a witness.
    #[error("witness refused: {reason} (pass --force to emit anyway, flagged)")]
    Refused { reason: String },

    /// A serialized certificate that does not parse back into one.
    #[error("malformed certificate: {0}")]
    BadCertificate(String),

    #[error(transparent)]
    Padic(#[from] padic_core::PadicError),

    #[error(transparent)]
    Algebra(#[from] lie_matrix::LieError),

    #[error(transparent)]
    Group(#[from] uniform_groups::GroupError),

    #[error(transparent)]
    Character(#[from] delta_characters::CharacterError),

    #[error(transparent)]
    Arithmetic(#[from] arithmetic_criteria::ArithmeticError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl LabError {
    /// The process exit code this error maps to: usage problems exit 2,
    /// verification-level refusals exit 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Refused { .. } => 1,
            _ => 2,
        }
    }
}
