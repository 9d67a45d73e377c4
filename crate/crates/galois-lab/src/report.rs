use serde_json::{json, Value};

/// One named verification with its outcome, the unit every command's
/// machine output is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    /// Stable check name.
    pub name: String,
    /// Whether the check held.
    pub passed: bool,
    /// Human-oriented numbers behind the outcome.
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed, detail: detail.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
        })
    }

    pub fn from_json(value: &Value) -> Option<Self> {
        Some(CheckResult {
            name: value.get("name")?.as_str()?.to_string(),
            passed: value.get("passed")?.as_bool()?,
            detail: value.get("detail")?.as_str()?.to_string(),
        })
    }
}

/// Renders a check list as aligned human-readable lines.
pub fn render_checks(checks: &[CheckResult]) -> String {
    checks
        .iter()
        .map(|c| {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                format!("  [{mark}] {}", c.name)
            } else {
                format!("  [{mark}] {} — {}", c.name, c.detail)
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}
