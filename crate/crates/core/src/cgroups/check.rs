//! Named pass/fail checks shared by demo and verification reports.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub witness: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            witness: witness.into(),
        }
    }

    pub fn not_applicable(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::NotApplicable,
            witness: witness.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}
