use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Guard rails for the enumerative routines.
///
/// `max_vertices` bounds anything that materializes the vertex set or the
/// edge graph. `max_cells` bounds brute-force scans (integer boxes, facet
/// subsets, square subsystems).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: u64,
    pub max_cells: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 100_000,
            max_cells: 10_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_vertices: u64::MAX,
            max_cells: u64::MAX,
        }
    }

    pub fn check_vertices(&self, what: &'static str, required: &BigInt) -> Result<()> {
        check(what, required, self.max_vertices)
    }

    pub fn check_cells(&self, what: &'static str, required: &BigInt) -> Result<()> {
        check(what, required, self.max_cells)
    }
}

fn check(what: &'static str, required: &BigInt, limit: u64) -> Result<()> {
    if *required > BigInt::from(limit) {
        Err(Error::BudgetExceeded {
            what,
            required: required.to_string(),
            limit,
        })
    } else {
        Ok(())
    }
}
