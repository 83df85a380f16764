use serde::Serialize;

/// Maximum number of failure messages kept verbatim.
const KEPT_FAILURES: usize = 20;

/// Outcome of one verification: how many instances were checked and which
/// of them failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), checked: 0, failed: 0, failures: Vec::new(), notes: Vec::new() }
    }

    /// Counts one instance; `describe` is only called on failure.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
        ok
    }

    /// Records a failure that did not come from a counted instance, such as
    /// an error raised while building the inputs.
    pub fn fail(&mut self, message: impl Into<String>) {
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(message.into());
        }
    }

    pub fn note(&mut self, message: impl Into<String>) {
        self.notes.push(message.into());
    }

    /// Runs a fallible step, turning an error into a recorded failure.
    pub fn attempt<T>(&mut self, what: &str, result: crate::Result<T>) -> Option<T> {
        match result {
            Ok(value) => Some(value),
            Err(err) => {
                self.checked += 1;
                self.fail(format!("{what}: {err}"));
                None
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(format!("{}: {f}", other.name));
            }
        }
        self.notes.extend(other.notes);
    }
}
