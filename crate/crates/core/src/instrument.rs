//! Cost counting: comparisons and array-cell accesses.
//!
//! Partitioning accesses follow the line inventory of the block schemes.
//! One pivot: every element of a window is read once for classification and
//! every misplaced element costs one more access at the left boundary. Two
//! pivots: additionally every element found `<= q` is read again when it is
//! classified against `p`. Pivot loads and the final pivot swaps are kept
//! apart in `boundary_ma`. The totals add pivot-sample sorting, the
//! insertion sort of small subproblems, and the equal-pivot test.

use std::cell::Cell;
use std::cmp::Ordering;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::partition::{block_partition_one_with, block_partition_two_with, lomuto_classic_with, BlockBuffer};
use crate::pivot::{gather_with, select_with, PivotStrategy, SampleVector};
use crate::sort::{drive, Algorithm, SampleSite, SortConfig};
use crate::tally::{Site, Tally};

/// Largest `n` accepted by [`brute_force_expected_partition_cost`].
pub const BRUTE_FORCE_MAX_N: usize = 9;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Counters {
    /// Pivot comparisons of the most recent partitioning call.
    pub partition_cmp: u64,
    /// Inventory accesses of the most recent partitioning call.
    pub partition_ma: u64,
    pub partitions: u64,
    pub sum_partition_cmp: u64,
    pub sum_partition_ma: u64,
    pub boundary_ma: u64,
    pub sample_cmp: u64,
    pub sample_ma: u64,
    pub small_sort_cmp: u64,
    pub small_sort_ma: u64,
    pub guard_cmp: u64,
    pub total_cmp: u64,
    pub total_ma: u64,
    pub total_swaps: u64,
    /// Deepest partitioning call, the root call being depth 1.
    pub max_depth: u32,
}

impl Counters {
    pub const FIELD_NAMES: [&'static str; 15] = [
        "partition_cmp",
        "partition_ma",
        "partitions",
        "sum_partition_cmp",
        "sum_partition_ma",
        "boundary_ma",
        "sample_cmp",
        "sample_ma",
        "small_sort_cmp",
        "small_sort_ma",
        "guard_cmp",
        "total_cmp",
        "total_ma",
        "total_swaps",
        "max_depth",
    ];

    /// Values in the order of [`Counters::FIELD_NAMES`].
    pub fn values(&self) -> [u64; 15] {
        [
            self.partition_cmp,
            self.partition_ma,
            self.partitions,
            self.sum_partition_cmp,
            self.sum_partition_ma,
            self.boundary_ma,
            self.sample_cmp,
            self.sample_ma,
            self.small_sort_cmp,
            self.small_sort_ma,
            self.guard_cmp,
            self.total_cmp,
            self.total_ma,
            self.total_swaps,
            u64::from(self.max_depth),
        ]
    }
}

impl Tally for Counters {
    fn begin_partition(&mut self, depth: u32) {
        self.partitions += 1;
        self.partition_cmp = 0;
        self.partition_ma = 0;
        self.max_depth = self.max_depth.max(depth);
    }

    fn partition_cmp(&mut self, n: usize) {
        let n = n as u64;
        self.partition_cmp += n;
        self.sum_partition_cmp += n;
        self.total_cmp += n;
    }

    fn partition_ma(&mut self, n: usize) {
        let n = n as u64;
        self.partition_ma += n;
        self.sum_partition_ma += n;
        self.total_ma += n;
    }

    fn boundary_ma(&mut self, n: usize) {
        self.boundary_ma += n as u64;
        self.total_ma += n as u64;
    }

    fn swaps(&mut self, n: usize) {
        self.total_swaps += n as u64;
    }

    fn sort_cmp(&mut self, site: Site, n: usize) {
        let n = n as u64;
        match site {
            Site::Sample => self.sample_cmp += n,
            Site::Small => self.small_sort_cmp += n,
        }
        self.total_cmp += n;
    }

    fn sort_ma(&mut self, site: Site, n: usize) {
        let n = n as u64;
        match site {
            Site::Sample => self.sample_ma += n,
            Site::Small => self.small_sort_ma += n,
        }
        self.total_ma += n;
    }

    fn guard_cmp(&mut self) {
        self.guard_cmp += 1;
        self.total_cmp += 1;
    }
}

/// Counters with a comparison budget; the drivers stop recursing once the
/// budget is spent.
struct Budget {
    counters: Counters,
    limit: u64,
}

impl Tally for Budget {
    fn begin_partition(&mut self, depth: u32) {
        self.counters.begin_partition(depth)
    }
    fn partition_cmp(&mut self, n: usize) {
        Tally::partition_cmp(&mut self.counters, n)
    }
    fn partition_ma(&mut self, n: usize) {
        Tally::partition_ma(&mut self.counters, n)
    }
    fn boundary_ma(&mut self, n: usize) {
        Tally::boundary_ma(&mut self.counters, n)
    }
    fn swaps(&mut self, n: usize) {
        self.counters.swaps(n)
    }
    fn sort_cmp(&mut self, site: Site, n: usize) {
        self.counters.sort_cmp(site, n)
    }
    fn sort_ma(&mut self, site: Site, n: usize) {
        self.counters.sort_ma(site, n)
    }
    fn guard_cmp(&mut self) {
        Tally::guard_cmp(&mut self.counters)
    }
    fn exhausted(&self) -> bool {
        self.counters.total_cmp >= self.limit
    }
}

/// Outcome of [`instrumented_sort_with_budget`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetedRun {
    pub counters: Counters,
    /// False if the run stopped early; the slice is then only partly sorted.
    pub completed: bool,
}

fn check_instrumented(algorithm: Algorithm, config: &SortConfig) -> Result<()> {
    if !algorithm.is_instrumented() {
        return Err(Error::NotInstrumented(algorithm.to_string()));
    }
    config.check_pivots(algorithm)?;
    Ok(())
}

/// Sorts `v` exactly as [`crate::sort`] would and returns the cost counts.
pub fn instrumented_sort<T: Ord>(
    algorithm: Algorithm,
    v: &mut [T],
    config: &SortConfig,
) -> Result<Counters> {
    check_instrumented(algorithm, config)?;
    let mut counters = Counters::default();
    drive(algorithm, v, config, &mut counters);
    Ok(counters)
}

/// Like [`instrumented_sort`], but abandons the sort once `max_cmp`
/// comparisons have been made.
pub fn instrumented_sort_with_budget<T: Ord>(
    algorithm: Algorithm,
    v: &mut [T],
    config: &SortConfig,
    max_cmp: u64,
) -> Result<BudgetedRun> {
    check_instrumented(algorithm, config)?;
    let mut budget = Budget {
        counters: Counters::default(),
        limit: max_cmp,
    };
    drive(algorithm, v, config, &mut budget);
    let completed = !budget.exhausted();
    Ok(BudgetedRun {
        counters: budget.counters,
        completed,
    })
}

/// Runs only the top-level sampling and partitioning step on `v`.
pub fn single_partition<T: Ord>(
    algorithm: Algorithm,
    v: &mut [T],
    config: &SortConfig,
) -> Result<Counters> {
    check_instrumented(algorithm, config)?;
    let k = algorithm.pivots().expect("instrumented algorithms have pivots");
    let strategy = config.strategy_for(k);
    let n = v.len();
    let resolved = strategy.resolve(n);
    if n <= resolved.kappa() {
        return Err(Error::EnumerationTooSmall {
            n,
            kappa: resolved.kappa(),
        });
    }
    let mut c = Counters::default();
    if config.sample_site() == SampleSite::Spread && resolved.samples() {
        gather_with(v, resolved.kappa(), &mut c);
    }
    let layout = select_with(v, resolved, &mut c);
    c.begin_partition(1);
    let region = &mut v[layout.lower..n - layout.upper];
    let mut block = BlockBuffer::new(config.block_size());
    match algorithm {
        Algorithm::Classic => {
            lomuto_classic_with(region, &mut c);
        }
        Algorithm::L1 => {
            block_partition_one_with(region, &mut block, &mut c);
        }
        Algorithm::L2 => {
            block_partition_two_with(region, layout.middle, &mut block, &mut c);
        }
        Algorithm::Std => unreachable!(),
    }
    Ok(c)
}

/// Exact expected cost of one partitioning step over all inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedPartitionCost {
    pub cmp: BigRational,
    /// Inventory accesses, without the boundary part.
    pub ma: BigRational,
    pub boundary_ma: BigRational,
}

impl ExpectedPartitionCost {
    pub fn total_ma(&self) -> BigRational {
        &self.ma + &self.boundary_ma
    }
}

/// Averages the single-step counters over all `n!` permutations of `1..=n`,
/// with pivots drawn by the sample vector `t`.
pub fn brute_force_expected_partition_cost(
    algorithm: Algorithm,
    n: usize,
    t: &SampleVector,
) -> Result<ExpectedPartitionCost> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::EnumerationTooLarge {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let config = SortConfig::builder()
        .strategy(PivotStrategy::FromSortedSample(t.clone()))
        .sample_site(SampleSite::Front)
        .build()?;
    check_instrumented(algorithm, &config)?;
    if n <= t.kappa() {
        return Err(Error::EnumerationTooSmall { n, kappa: t.kappa() });
    }
    let (mut cmp, mut ma, mut boundary, mut count) = (0u64, 0u64, 0u64, 0u64);
    for mut perm in (1..=n as u64).permutations(n) {
        let c = single_partition(algorithm, &mut perm, &config)?;
        cmp += c.partition_cmp;
        ma += c.partition_ma;
        boundary += c.boundary_ma;
        count += 1;
    }
    let avg = |x: u64| BigRational::new(BigInt::from(x), BigInt::from(count));
    Ok(ExpectedPartitionCost {
        cmp: avg(cmp),
        ma: avg(ma),
        boundary_ma: avg(boundary),
    })
}

/// An element that counts every comparison made on it.
#[derive(Debug, Clone, Copy)]
pub struct Counted<'a, T> {
    pub value: T,
    counter: &'a Cell<u64>,
}

impl<'a, T> Counted<'a, T> {
    pub fn new(value: T, counter: &'a Cell<u64>) -> Self {
        Counted { value, counter }
    }

    /// Wraps every element of `values` with the shared `counter`.
    pub fn wrap_all(values: impl IntoIterator<Item = T>, counter: &'a Cell<u64>) -> Vec<Self> {
        values.into_iter().map(|v| Counted::new(v, counter)).collect()
    }

    fn tick(&self) {
        self.counter.set(self.counter.get() + 1);
    }
}

impl<T: Ord> PartialEq for Counted<'_, T> {
    fn eq(&self, other: &Self) -> bool {
        self.tick();
        self.value == other.value
    }
}

impl<T: Ord> Eq for Counted<'_, T> {}

impl<T: Ord> PartialOrd for Counted<'_, T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for Counted<'_, T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tick();
        self.value.cmp(&other.value)
    }
}
