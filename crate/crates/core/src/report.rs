//! Check reports shared by the verification suites.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one named identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Total `t`-degree through which the identity was verified; `None`
    /// for identities that hold exactly (or do not involve `t`).
    pub certified_degree: Option<u32>,
    /// Number of individual instances checked.
    pub items: usize,
    /// Human-readable descriptions of failing instances (capped).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

const MAX_FAILURES: usize = 20;

impl Check {
    pub fn new(name: impl Into<String>, certified_degree: Option<u32>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            certified_degree,
            items: 0,
            failures: Vec::new(),
            note: None,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            status: Status::Skipped,
            note: Some(reason.into()),
            ..Check::new(name, None)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Records one instance; `describe` is only called on failure.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.items += 1;
        if !ok {
            self.status = Status::Fail;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    /// Builds a check from `(ok, description)` results computed elsewhere
    /// (typically in parallel); the input order is kept.
    pub fn from_results(
        name: impl Into<String>,
        certified_degree: Option<u32>,
        results: impl IntoIterator<Item = (bool, String)>,
    ) -> Self {
        let mut check = Check::new(name, certified_degree);
        for (ok, desc) in results {
            check.record(ok, || desc);
        }
        check
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// True when no check failed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_are_capped() {
        let mut c = Check::new("x", Some(1));
        for i in 0..50 {
            c.record(i % 2 == 0, || format!("item {i}"));
        }
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.items, 50);
        assert_eq!(c.failures.len(), MAX_FAILURES);
        assert!(!all_passed(&[c, Check::skipped("y", "n/a")]));
    }

    #[test]
    fn skipped_is_not_a_failure() {
        assert!(Check::skipped("y", "needs full support").passed());
    }
}
