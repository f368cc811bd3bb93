use serde::{Deserialize, Serialize};

/// Stored witnesses per report; the failure count keeps going past this.
const MAX_WITNESSES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub suite: String,
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl PropertyReport {
    pub fn new(suite: impl Into<String>) -> Self {
        PropertyReport { suite: suite.into(), cases: 0, failure_count: 0, failures: Vec::new(), skipped: None }
    }

    pub fn skipped(suite: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut r = Self::new(suite);
        r.skipped = Some(reason.into());
        r
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Records one case; `failure` is evaluated only when `ok` is false.
    pub fn check(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(failure());
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(witness);
        }
    }

    pub fn merge(&mut self, other: PropertyReport) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        for w in other.failures {
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(w);
            }
        }
    }

    pub fn summary_line(&self) -> String {
        match &self.skipped {
            Some(why) => format!("SKIP {} ({why})", self.suite),
            None if self.passed() => format!("PASS {} ({} cases)", self.suite, self.cases),
            None => format!("FAIL {} ({} of {} cases failed)", self.suite, self.failure_count, self.cases),
        }
    }
}
