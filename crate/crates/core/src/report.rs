//! Outcome of checking one identity.

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub identity: String,
    pub m: usize,
    pub k: i64,
    /// `0` for exact identities that hold; otherwise a max-norm difference.
    pub residual: f64,
    pub exact: bool,
    /// Numeric tolerance; exact identities need residual exactly `0`.
    pub tolerance: f64,
    pub note: Option<String>,
}

impl IdentityReport {
    pub fn exact(identity: impl Into<String>, m: usize, k: i64, holds: bool, residual: f64) -> Self {
        IdentityReport {
            identity: identity.into(),
            m,
            k,
            residual: if holds { 0.0 } else { residual.max(f64::MIN_POSITIVE) },
            exact: true,
            tolerance: 0.0,
            note: None,
        }
    }

    pub fn numeric(identity: impl Into<String>, m: usize, k: i64, residual: f64, tolerance: f64) -> Self {
        IdentityReport {
            identity: identity.into(),
            m,
            k,
            residual,
            exact: false,
            tolerance,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        if self.exact {
            self.residual == 0.0
        } else {
            self.residual.is_finite() && self.residual <= self.tolerance
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "identity": self.identity,
            "m": self.m,
            "k": self.k,
            "residual": self.residual,
            "exact": self.exact,
            "tolerance": self.tolerance,
            "passed": self.passed(),
        });
        if let Some(n) = &self.note {
            v["note"] = json!(n);
        }
        v
    }
}
