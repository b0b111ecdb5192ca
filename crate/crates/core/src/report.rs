//! Structured outcome of one identity check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::series::TruncatedSeries;

/// Two series that should agree, and where they first do not.
///
/// Invariants: `passed == first_discrepancy.is_none()` and both series share
/// one truncation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub passed: bool,
    pub context: BTreeMap<String, Value>,
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
    pub first_discrepancy: Option<usize>,
}

impl VerificationReport {
    /// Compares `lhs` and `rhs` through the smaller of their truncations.
    pub fn compare(check: impl Into<String>, lhs: TruncatedSeries, rhs: TruncatedSeries) -> Self {
        let n = lhs.trunc().min(rhs.trunc());
        let (lhs, rhs) = (lhs.truncate(n), rhs.truncate(n));
        let first_discrepancy = lhs.first_difference(&rhs);
        Self::with_outcome(check, lhs, rhs, first_discrepancy)
    }

    /// A report whose verdict was decided by something other than comparing
    /// the two series coefficientwise.
    pub fn with_outcome(
        check: impl Into<String>,
        lhs: TruncatedSeries,
        rhs: TruncatedSeries,
        first_discrepancy: Option<usize>,
    ) -> Self {
        assert_eq!(lhs.trunc(), rhs.trunc(), "report series must share a truncation");
        VerificationReport {
            check: check.into(),
            passed: first_discrepancy.is_none(),
            context: BTreeMap::new(),
            lhs,
            rhs,
            first_discrepancy,
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.context.insert(key.to_owned(), value.into());
        self
    }

    /// Adds every entry of `context`, keeping existing keys.
    pub fn with_context(mut self, context: &BTreeMap<String, Value>) -> Self {
        for (k, v) in context {
            self.context.entry(k.clone()).or_insert_with(|| v.clone());
        }
        self
    }
}
