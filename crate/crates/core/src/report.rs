use serde::Serialize;

/// Result of one verification routine: how many instances ran and which failed.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report { check: check.into(), checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Counts one instance, recording a failure unless `ok`.
    pub fn record(&mut self, ok: bool, case: impl Into<String>, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure { case: case.into(), detail: detail() });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}
