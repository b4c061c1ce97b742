use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Brute-force guardrails shared by every enumeration in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Maximum number of vectors a single ball enumeration may yield.
    pub enumeration: u64,
    /// Maximum total ball cells touched by a codeword disjointness check.
    pub disjointness_cells: u64,
    /// Maximum difference pairs for the difference-set equivalence oracle.
    pub equivalence_pairs: u64,
    /// Maximum translate-ball cells (or window points) for window checks.
    pub window_cells: u64,
    /// Maximum index accepted by the sublattice enumerator.
    pub sublattice_index: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: 10_000_000,
            disjointness_cells: 1_000_000,
            equivalence_pairs: 1_000_000,
            window_cells: 10_000_000,
            sublattice_index: 10_000,
        }
    }
}

pub(crate) fn check_cap(what: &'static str, needed: u128, cap: u64) -> Result<(), Error> {
    if needed > cap as u128 {
        return Err(Error::CapExceeded {
            what,
            needed: needed.to_string(),
            cap,
        });
    }
    Ok(())
}
