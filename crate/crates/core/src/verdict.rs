use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

/// Outcome of one checked statement, with a machine-readable id and a short
/// human-readable reason.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Clause {
    pub id: String,
    pub verdict: Verdict,
    pub reason: String,
}

impl Clause {
    pub fn check(id: impl Into<String>, ok: bool, reason: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            reason: reason.into(),
        }
    }

    pub fn not_applicable(id: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            verdict: Verdict::NotApplicable,
            reason: reason.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

/// Counts of each verdict.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

impl Tally {
    pub fn of(clauses: &[Clause]) -> Self {
        clauses.iter().fold(Self::default(), |mut t, c| {
            match c.verdict {
                Verdict::Pass => t.pass += 1,
                Verdict::Fail => t.fail += 1,
                Verdict::NotApplicable => t.not_applicable += 1,
            }
            t
        })
    }

    pub fn all_pass(&self) -> bool {
        self.fail == 0
    }
}
