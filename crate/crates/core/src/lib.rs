//! Branch-free Lomuto quicksort with one and two pivots.
//!
//! The partitioning routines classify a window of elements into a small
//! offset buffer using arithmetic on comparison results, then swap the
//! recorded elements in a separate loop. Around them sit the recursive
//! drivers ([`sort_one_pivot`], [`sort_two_pivot`]), pivot sampling,
//! instrumented variants counting comparisons and array accesses, an exact
//! cost model for sampled quicksort, input generators and a benchmark
//! harness.

pub mod bench;
pub mod check;
pub mod cost;
pub mod error;
pub mod instrument;
pub mod partition;
pub mod pivot;
pub mod sort;
mod tally;
pub mod workload;

pub use error::{ConfigError, Error, Result};
pub use instrument::{instrumented_sort, Counted, Counters};
pub use partition::{
    block_partition_one, block_partition_one_in, block_partition_two, block_partition_two_in,
    insertion_sort, lomuto_classic, BlockBuffer, PartitionOne, PartitionTwo,
};
pub use pivot::{select_pivots, strategy_catalog, PivotCount, PivotStrategy, SampleVector};
pub use sort::{sort, sort_classic, sort_one_pivot, sort_two_pivot, Algorithm, SampleSite, SortConfig};
pub use workload::{generate, Distribution, DistributionKind};
