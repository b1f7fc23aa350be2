//! Structured pass/fail reports shared by the verifier suites.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A recorded discrepancy between a printed formula and the arbitrated
    /// value; reported, but not a failure.
    KnownDiscrepancy,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub detail: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            checks: vec![],
        }
    }

    pub fn push(&mut self, id: impl Into<String>, detail: impl Into<String>, ok: bool) {
        self.checks.push(Check {
            id: id.into(),
            detail: detail.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            note: None,
        });
    }

    pub fn push_known(
        &mut self,
        id: impl Into<String>,
        detail: impl Into<String>,
        note: impl Into<String>,
    ) {
        self.checks.push(Check {
            id: id.into(),
            detail: detail.into(),
            status: Status::KnownDiscrepancy,
            note: Some(note.into()),
        });
    }

    pub fn push_check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut pass = 0;
        let mut fail = 0;
        let mut known = 0;
        for c in &self.checks {
            match c.status {
                Status::Pass => pass += 1,
                Status::Fail => fail += 1,
                Status::KnownDiscrepancy => known += 1,
            }
        }
        (pass, fail, known)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (pass, fail, known) = self.counts();
        writeln!(
            f,
            "suite {}: {} pass, {} fail, {} known-discrepancy",
            self.suite, pass, fail, known
        )?;
        for c in &self.checks {
            if c.status != Status::Pass {
                let tag = match c.status {
                    Status::Fail => "FAIL",
                    Status::KnownDiscrepancy => "KNOWN",
                    Status::Pass => unreachable!(),
                };
                writeln!(
                    f,
                    "  [{tag}] {} {}{}",
                    c.id,
                    c.detail,
                    c.note
                        .as_ref()
                        .map(|n| format!(" ({n})"))
                        .unwrap_or_default()
                )?;
            }
        }
        Ok(())
    }
}
