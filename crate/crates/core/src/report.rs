use std::fmt;

use serde::Serialize;

/// Outcome of one axiom schema.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    /// Element indices of the first violating instance.
    pub witness: Option<Vec<usize>>,
}

/// Pass/fail per axiom schema, with a witness for every failure.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    /// `Some(n)` when the checks ran on `n` random instances instead of
    /// exhaustively.
    pub sampled: Option<u64>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sampled(samples: u64) -> Self {
        AxiomReport { checks: Vec::new(), sampled: Some(samples) }
    }

    pub fn push(&mut self, name: impl Into<String>, witness: Option<Vec<usize>>) {
        self.checks.push(AxiomCheck { name: name.into(), passed: witness.is_none(), witness });
    }

    pub fn certified(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
        self.sampled = match (self.sampled, other.sampled) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.sampled {
            writeln!(f, "(sampled: {n} random instances per schema)")?;
        }
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "  {:<28} pass", c.name)?,
                Some(w) => writeln!(f, "  {:<28} FAIL witness {:?}", c.name, w)?,
            }
        }
        Ok(())
    }
}
