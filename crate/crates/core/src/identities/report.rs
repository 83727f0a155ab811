use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One grid cell whose two sides disagree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub params: Value,
    pub lhs: String,
    pub rhs: String,
}

impl Counterexample {
    pub fn new(params: Value, lhs: impl ToString, rhs: impl ToString) -> Self {
        Counterexample {
            params,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Outcome of checking one identity over a parameter grid.
///
/// `status` is `Pass` exactly when `counterexample` is `None`; the
/// counterexample is the first failing cell in the grid's canonical order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub grid: Value,
    pub cells: u64,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Build a report from per-cell outcomes listed in canonical order.
    pub fn from_outcomes(
        identity: &str,
        grid: Value,
        outcomes: impl IntoIterator<Item = Option<Counterexample>>,
    ) -> Self {
        let mut cells = 0;
        let mut first = None;
        for outcome in outcomes {
            cells += 1;
            if first.is_none() {
                first = outcome;
            }
        }
        VerificationReport {
            identity: identity.to_owned(),
            grid,
            cells,
            status: if first.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            counterexample: first,
        }
    }

    /// Merge reports on the same identity, keeping the earliest failure.
    pub fn combine(identity: &str, grid: Value, parts: Vec<VerificationReport>) -> Self {
        let cells = parts.iter().map(|r| r.cells).sum();
        let counterexample = parts.into_iter().find_map(|r| r.counterexample);
        VerificationReport {
            identity: identity.to_owned(),
            grid,
            cells,
            status: if counterexample.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            counterexample,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report is plain data")
    }
}

/// Evaluate `check` on every cell (in parallel on the current rayon pool)
/// and report the first failure in the order `cells` are listed.
pub fn check_cells<P, F>(identity: &str, grid: Value, cells: Vec<P>, check: F) -> VerificationReport
where
    P: Sync,
    F: Fn(&P) -> Option<Counterexample> + Sync,
{
    let outcomes: Vec<Option<Counterexample>> = cells.par_iter().map(&check).collect();
    VerificationReport::from_outcomes(identity, grid, outcomes)
}
