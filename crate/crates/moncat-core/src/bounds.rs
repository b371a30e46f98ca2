//! Work budgets for the enumeration-heavy operations.
//!
//! Candidate spaces (natural-transformation components, coend triples, ...)
//! are sized before they are materialized; anything over the budget is
//! refused with [`WorkLimit`] instead of grinding. The default budget is
//! 10^6 and can be overridden with the `MONCAT_MAX_WORK` environment
//! variable.

use std::sync::OnceLock;

pub const DEFAULT_MAX_WORK: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_work: u64,
}

impl Bounds {
    pub fn new(max_work: u64) -> Self {
        Bounds { max_work }
    }

    /// Budget from `MONCAT_MAX_WORK`, falling back to the default.
    /// The variable is read once per process.
    pub fn from_env() -> Self {
        static ENV: OnceLock<u64> = OnceLock::new();
        let max = *ENV.get_or_init(|| {
            std::env::var("MONCAT_MAX_WORK")
                .ok()
                .and_then(|v| v.parse().ok())
                .unwrap_or(DEFAULT_MAX_WORK)
        });
        Bounds { max_work: max }
    }

    /// Checks that `needed` units of work fit in the budget.
    pub fn admit(&self, what: &str, needed: u128) -> Result<(), WorkLimit> {
        if needed > self.max_work as u128 {
            Err(WorkLimit {
                what: what.to_string(),
                needed,
                limit: self.max_work,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::from_env()
    }
}

/// An enumeration was refused because its candidate space exceeds the budget.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{what}: candidate space of size {needed} exceeds work limit {limit}")]
pub struct WorkLimit {
    pub what: String,
    pub needed: u128,
    pub limit: u64,
}
