//! Hooks through which the sorting routines report cost events.
//!
//! Every routine is generic over a [`Tally`]. Plain sorts use [`NoTally`],
//! whose hooks are empty and inline away; instrumented sorts thread a
//! [`Counters`](crate::instrument::Counters) context through the same code.

/// Which non-partitioning sort a small-sort event belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Site {
    /// Sorting the pivot sample.
    Sample,
    /// Insertion sort of a subproblem at or below the cutoff.
    Small,
}

pub(crate) trait Tally {
    /// A partitioning call at recursion depth `depth` (root = 1) starts.
    #[inline(always)]
    fn begin_partition(&mut self, _depth: u32) {}
    /// Pivot comparisons of the partitioning line inventory.
    #[inline(always)]
    fn partition_cmp(&mut self, _n: usize) {}
    /// Array-cell accesses of the partitioning line inventory.
    #[inline(always)]
    fn partition_ma(&mut self, _n: usize) {}
    /// Pivot loads and final pivot swaps, outside the line inventory.
    #[inline(always)]
    fn boundary_ma(&mut self, _n: usize) {}
    #[inline(always)]
    fn swaps(&mut self, _n: usize) {}
    #[inline(always)]
    fn sort_cmp(&mut self, _site: Site, _n: usize) {}
    #[inline(always)]
    fn sort_ma(&mut self, _site: Site, _n: usize) {}
    /// The `p != q` test of the two-pivot driver.
    #[inline(always)]
    fn guard_cmp(&mut self) {}
    /// Whether the run should stop early (comparison budget spent).
    #[inline(always)]
    fn exhausted(&self) -> bool {
        false
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct NoTally;

impl Tally for NoTally {}
