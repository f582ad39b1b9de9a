//! Uniform pass/fail reports for identity and property checks.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// Outcome of a named check. Witness values are rendered in wire format so
/// reports are independent of the scalar type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    pub cases: usize,
    pub witness: Vec<(String, String)>,
    pub detail: String,
}

impl CheckReport {
    pub fn pass(name: &str, cases: usize) -> Self {
        CheckReport {
            name: name.to_string(),
            status: CheckStatus::Pass,
            cases,
            witness: Vec::new(),
            detail: String::new(),
        }
    }

    pub fn fail(name: &str, cases: usize, witness: Vec<(String, String)>, detail: impl Into<String>) -> Self {
        CheckReport { name: name.to_string(), status: CheckStatus::Fail, cases, witness, detail: detail.into() }
    }

    pub fn not_applicable(name: &str, detail: impl Into<String>) -> Self {
        CheckReport {
            name: name.to_string(),
            status: CheckStatus::NotApplicable,
            cases: 0,
            witness: Vec::new(),
            detail: detail.into(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

/// Shorthand for building witness lists.
pub fn w(label: &str, value: impl ToString) -> (String, String) {
    (label.to_string(), value.to_string())
}
