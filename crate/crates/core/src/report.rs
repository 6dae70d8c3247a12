//! Pass/fail records shared by every report.

use serde::{Deserialize, Serialize};

/// One asserted check: the claimed value beside the computed one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub claimed: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(id: impl Into<String>, claimed: impl ToString, computed: impl ToString, pass: bool) -> Self {
        Check { id: id.into(), claimed: claimed.to_string(), computed: computed.to_string(), pass }
    }

    pub fn eq<T: PartialEq + ToString>(id: impl Into<String>, claimed: T, computed: T) -> Self {
        let pass = claimed == computed;
        Check::new(id, claimed, computed, pass)
    }

    /// A boolean property expected to hold.
    pub fn holds(id: impl Into<String>, ok: bool) -> Self {
        Check::new(id, true, ok, ok)
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
