use serde::Serialize;

const MAX_RECORDED: usize = 1000;

/// One failed law together with the indices that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: &'static str,
    pub witness: Vec<usize>,
}

/// Outcome of a validation scan. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub violations: Vec<Violation>,
    /// Set when more violations were found than are recorded.
    pub truncated: bool,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: &'static str, witness: Vec<usize>) {
        if self.violations.len() < MAX_RECORDED {
            self.violations.push(Violation { law, witness });
        } else {
            self.truncated = true;
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.truncated |= other.truncated;
        for v in other.violations {
            self.push(v.law, v.witness);
        }
    }

    pub fn has(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn first(&self, law: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }
}
