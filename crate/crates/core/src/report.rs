use serde::Serialize;
use std::fmt;

/// Outcome of one randomized law check.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LawReport {
    pub law: String,
    pub trials: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl LawReport {
    pub fn pass(law: impl Into<String>, trials: usize) -> Self {
        LawReport { law: law.into(), trials, passed: true, counterexample: None }
    }

    pub fn fail(law: impl Into<String>, trials: usize, witness: impl Into<String>) -> Self {
        LawReport { law: law.into(), trials, passed: false, counterexample: Some(witness.into()) }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub subject: String,
    pub laws: Vec<LawReport>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), laws: Vec::new() }
    }

    pub fn push(&mut self, law: LawReport) {
        self.laws.push(law);
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.law == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.laws {
            let status = if l.passed { "PASS" } else { "FAIL" };
            write!(f, "{} {} {} trials={}", self.subject, l.law, status, l.trials)?;
            if let Some(w) = &l.counterexample {
                write!(f, " witness={w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Runs `trial` for each index, stopping at the first counterexample.
pub(crate) fn run_law<F>(law: &str, trials: usize, mut trial: F) -> LawReport
where
    F: FnMut(usize) -> std::result::Result<(), String>,
{
    for t in 0..trials {
        if let Err(w) = trial(t) {
            return LawReport::fail(law, t + 1, w);
        }
    }
    LawReport::pass(law, trials)
}
