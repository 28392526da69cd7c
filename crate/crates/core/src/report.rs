use std::fmt;

use serde::Serialize;

/// One violated condition with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub check: String,
    pub witness: String,
}

/// Diagnostic report: empty iff the checked object is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub issues: Vec<Issue>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn push(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.issues.push(Issue {
            check: check.into(),
            witness: witness.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.issues.extend(other.issues);
    }

    /// Prefixes every check name, for nesting reports of sub-objects.
    pub fn scoped(mut self, scope: &str) -> Self {
        for issue in &mut self.issues {
            issue.check = format!("{scope}: {}", issue.check);
        }
        self
    }

    pub fn has(&self, check: &str) -> bool {
        self.issues.iter().any(|i| i.check.contains(check))
    }

    pub fn len(&self) -> usize {
        self.issues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "ok");
        }
        for (k, issue) in self.issues.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", issue.check, issue.witness)?;
        }
        Ok(())
    }
}
