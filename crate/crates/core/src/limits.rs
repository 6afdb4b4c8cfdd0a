//! Resource caps shared by every enumerating operation.

use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::max_cells`].
pub const MAX_CELLS_ENV: &str = "ARBOR_MAX_CELLS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ground set handed to set-partition enumeration.
    pub max_partition_ground: usize,
    /// Largest leaf count (labelled trees) or word length (planar trees) enumerated.
    pub max_leaves: usize,
    /// Largest truncation degree accepted by tree-sum paths.
    pub max_degree: usize,
    /// Budget of memo entries for the recursive paths.
    pub max_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_partition_ground: 12,
            max_leaves: 8,
            max_degree: 12,
            max_cells: 1 << 22,
        }
    }
}

impl Limits {
    /// Defaults, with `max_cells` taken from `ARBOR_MAX_CELLS` when it parses.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cells) = std::env::var(MAX_CELLS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            limits.max_cells = cells;
        }
        limits
    }

    pub(crate) fn check_partition_ground(&self, n: usize) -> Result<()> {
        check(n, self.max_partition_ground, "partition ground set size")
    }

    pub(crate) fn check_leaves(&self, n: usize) -> Result<()> {
        check(n, self.max_leaves, "tree leaf count")
    }

    pub(crate) fn check_degree(&self, n: usize) -> Result<()> {
        check(n, self.max_degree, "truncation degree")
    }

    pub(crate) fn check_cells(&self, n: usize) -> Result<()> {
        check(n, self.max_cells, "memo table size")
    }
}

fn check(requested: usize, limit: usize, what: &'static str) -> Result<()> {
    if requested > limit {
        Err(Error::ResourceLimit {
            what,
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}
