//! Configuration and recursive drivers.
//!
//! The drivers recurse into the smaller subproblem(s) and continue with the
//! largest one in a loop, so the native stack stays logarithmic even where
//! the recursion itself degenerates (one pivot on all-equal input). The
//! reported recursion depth is the logical one.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use crate::error::{ConfigError, Error, Result};
use crate::partition::{
    block_partition_one_with, block_partition_two_with, insertion_sort_with, lomuto_classic_with,
    BlockBuffer,
};
use crate::pivot::{gather_with, select_with, PivotCount, PivotStrategy};
use crate::tally::{NoTally, Site, Tally};

pub const DEFAULT_BLOCK_SIZE: usize = 1024;
pub const DEFAULT_INSERTION_CUTOFF: usize = 20;

/// Where the pivot sample is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SampleSite {
    /// The first `kappa` elements as they are.
    Front,
    /// `kappa` evenly spaced elements, swapped to the front first. On random
    /// permutations this has the same distribution as `Front`; on presorted
    /// input it avoids quadratic behaviour.
    #[default]
    Spread,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortConfig {
    block_size: usize,
    insertion_cutoff: Option<usize>,
    strategy: Option<PivotStrategy>,
    equal_guard: bool,
    sample_site: SampleSite,
}

impl Default for SortConfig {
    fn default() -> Self {
        SortConfig {
            block_size: DEFAULT_BLOCK_SIZE,
            insertion_cutoff: None,
            strategy: None,
            equal_guard: true,
            sample_site: SampleSite::Spread,
        }
    }
}

impl SortConfig {
    pub fn builder() -> SortConfigBuilder {
        SortConfigBuilder {
            config: SortConfig::default(),
        }
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// The explicitly configured strategy, if any.
    pub fn strategy(&self) -> Option<&PivotStrategy> {
        self.strategy.as_ref()
    }

    pub fn equal_guard(&self) -> bool {
        self.equal_guard
    }

    pub fn sample_site(&self) -> SampleSite {
        self.sample_site
    }

    /// Strategy used by a driver with `pivots` pivots: the configured one or
    /// the size-adaptive default.
    pub fn strategy_for(&self, pivots: PivotCount) -> Cow<'_, PivotStrategy> {
        match &self.strategy {
            Some(s) => Cow::Borrowed(s),
            None => Cow::Owned(PivotStrategy::default_for(pivots)),
        }
    }

    /// Insertion-sort cutoff used together with `strategy`: the configured
    /// value, or the default raised to the strategy's sample size.
    pub fn insertion_cutoff_for(&self, strategy: &PivotStrategy) -> usize {
        self.insertion_cutoff
            .unwrap_or_else(|| DEFAULT_INSERTION_CUTOFF.max(strategy.required_cutoff()))
    }

    /// Checks that the configured strategy fits an algorithm with `pivots`
    /// pivots.
    pub fn check_pivots(&self, algorithm: Algorithm) -> Result<(), ConfigError> {
        let (Some(k), Some(s)) = (algorithm.pivots(), &self.strategy) else {
            return Ok(());
        };
        if s.pivots() != k.get() {
            return Err(ConfigError::PivotCountMismatch {
                algorithm: algorithm.to_string(),
                algorithm_pivots: k.get(),
                strategy: s.to_string(),
                strategy_pivots: s.pivots(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SortConfigBuilder {
    config: SortConfig,
}

impl SortConfigBuilder {
    pub fn block_size(mut self, block_size: usize) -> Self {
        self.config.block_size = block_size;
        self
    }

    pub fn insertion_cutoff(mut self, cutoff: usize) -> Self {
        self.config.insertion_cutoff = Some(cutoff);
        self
    }

    pub fn strategy(mut self, strategy: PivotStrategy) -> Self {
        self.config.strategy = Some(strategy);
        self
    }

    pub fn equal_guard(mut self, on: bool) -> Self {
        self.config.equal_guard = on;
        self
    }

    pub fn sample_site(mut self, site: SampleSite) -> Self {
        self.config.sample_site = site;
        self
    }

    pub fn build(self) -> Result<SortConfig, ConfigError> {
        let c = self.config;
        if c.block_size == 0 {
            return Err(ConfigError::ZeroBlockSize);
        }
        if let Some(cutoff) = c.insertion_cutoff {
            // Without an explicit strategy either default may be used.
            let (kappa, name) = match &c.strategy {
                Some(s) => (s.required_cutoff(), s.to_string()),
                None => (2, "2 (adaptive)".to_string()),
            };
            if cutoff < kappa {
                return Err(ConfigError::CutoffBelowSample {
                    cutoff,
                    kappa,
                    strategy: name,
                });
            }
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Quicksort with the classic branchy Lomuto scheme.
    Classic,
    /// One-pivot block Lomuto.
    L1,
    /// Two-pivot block Lomuto.
    L2,
    /// The standard library's unstable sort, as a reference.
    Std,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Classic,
        Algorithm::L1,
        Algorithm::L2,
        Algorithm::Std,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Classic => "classic",
            Algorithm::L1 => "L1",
            Algorithm::L2 => "L2",
            Algorithm::Std => "std",
        }
    }

    /// Pivot count, `None` for the reference sort.
    pub fn pivots(self) -> Option<PivotCount> {
        match self {
            Algorithm::Classic | Algorithm::L1 => Some(PivotCount::One),
            Algorithm::L2 => Some(PivotCount::Two),
            Algorithm::Std => None,
        }
    }

    pub fn is_instrumented(self) -> bool {
        self != Algorithm::Std
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "classic" | "Classic" | "lomuto" => Ok(Algorithm::Classic),
            "L1" | "l1" => Ok(Algorithm::L1),
            "L2" | "l2" => Ok(Algorithm::L2),
            "std" | "Std" => Ok(Algorithm::Std),
            other => Err(Error::UnknownAlgorithm(other.to_string())),
        }
    }
}

/// Quicksort with one-pivot block partitioning.
///
/// # Panics
/// If the configured strategy selects two pivots.
pub fn sort_one_pivot<T: Ord>(v: &mut [T], config: &SortConfig) {
    drive(Algorithm::L1, v, config, &mut NoTally);
}

/// Quicksort with classic Lomuto partitioning and the same sampling and
/// cutoff as [`sort_one_pivot`].
///
/// # Panics
/// If the configured strategy selects two pivots.
pub fn sort_classic<T: Ord>(v: &mut [T], config: &SortConfig) {
    drive(Algorithm::Classic, v, config, &mut NoTally);
}

/// Dual-pivot quicksort with two-pivot block partitioning. With the equal
/// guard set, a middle group bounded by equal pivots is not recursed into.
///
/// # Panics
/// If the configured strategy selects one pivot.
pub fn sort_two_pivot<T: Ord>(v: &mut [T], config: &SortConfig) {
    drive(Algorithm::L2, v, config, &mut NoTally);
}

/// Sorts with any algorithm, rejecting a strategy of the wrong pivot count.
pub fn sort<T: Ord>(algorithm: Algorithm, v: &mut [T], config: &SortConfig) -> Result<()> {
    config.check_pivots(algorithm)?;
    drive(algorithm, v, config, &mut NoTally);
    Ok(())
}

struct Driver<'a, C> {
    strategy: &'a PivotStrategy,
    cutoff: usize,
    spread: bool,
    guard: bool,
    block: BlockBuffer,
    tally: &'a mut C,
}

pub(crate) fn drive<T: Ord, C: Tally>(
    algorithm: Algorithm,
    v: &mut [T],
    config: &SortConfig,
    tally: &mut C,
) {
    let Some(k) = algorithm.pivots() else {
        v.sort_unstable();
        return;
    };
    let strategy = config.strategy_for(k);
    assert_eq!(
        strategy.pivots(),
        k.get(),
        "strategy `{strategy}` does not fit algorithm {algorithm}"
    );
    let cutoff = config.insertion_cutoff_for(&strategy);
    debug_assert!(cutoff >= strategy.required_cutoff());
    let mut d = Driver {
        strategy: &strategy,
        cutoff,
        spread: config.sample_site == SampleSite::Spread,
        guard: config.equal_guard,
        block: BlockBuffer::new(config.block_size),
        tally,
    };
    match algorithm {
        Algorithm::Classic => d.one_pivot(v, true, 1),
        Algorithm::L1 => d.one_pivot(v, false, 1),
        Algorithm::L2 => d.two_pivot(v, 1),
        Algorithm::Std => unreachable!(),
    }
}

impl<C: Tally> Driver<'_, C> {
    /// Handles the base case; otherwise samples and places pivots and
    /// returns the layout.
    fn prepare<T: Ord>(&mut self, v: &mut [T]) -> Option<crate::pivot::PivotLayout> {
        if v.len() <= self.cutoff {
            insertion_sort_with(v, self.tally, Site::Small);
            return None;
        }
        let resolved = self.strategy.resolve(v.len());
        if self.spread && resolved.samples() {
            gather_with(v, resolved.kappa(), self.tally);
        }
        Some(select_with(v, resolved, self.tally))
    }

    fn one_pivot<T: Ord>(&mut self, mut v: &mut [T], classic: bool, mut depth: u32) {
        loop {
            if self.tally.exhausted() {
                return;
            }
            let Some(layout) = self.prepare(v) else {
                return;
            };
            let n = v.len();
            self.tally.begin_partition(depth);
            let region = &mut v[layout.lower..n - layout.upper];
            let i = if classic {
                lomuto_classic_with(region, self.tally)
            } else {
                block_partition_one_with(region, &mut self.block, self.tally)
            };
            let (left, rest) = std::mem::take(&mut v).split_at_mut(layout.lower + i);
            let right = &mut rest[1..];
            depth += 1;
            if left.len() < right.len() {
                self.one_pivot(left, classic, depth);
                v = right;
            } else {
                self.one_pivot(right, classic, depth);
                v = left;
            }
        }
    }

    fn two_pivot<T: Ord>(&mut self, mut v: &mut [T], mut depth: u32) {
        loop {
            if self.tally.exhausted() {
                return;
            }
            let Some(layout) = self.prepare(v) else {
                return;
            };
            let n = v.len();
            self.tally.begin_partition(depth);
            let region = &mut v[layout.lower..n - layout.upper];
            let r = block_partition_two_with(region, layout.middle, &mut self.block, self.tally);
            let (p, q) = (layout.lower + r.p_index, layout.lower + r.q_index);
            // p <= q holds, so they are equal iff p < q fails.
            let skip_middle = self.guard && {
                self.tally.guard_cmp();
                !(v[p] < v[q])
            };
            let (left, rest) = std::mem::take(&mut v).split_at_mut(p);
            let (middle, right) = rest[1..].split_at_mut(q - p - 1);
            let right = &mut right[1..];
            let middle: &mut [T] = if skip_middle { &mut [] } else { middle };
            depth += 1;
            let mut parts = [left, middle, right];
            parts.sort_by_key(|s| s.len());
            let [a, b, c] = parts;
            self.two_pivot(a, depth);
            self.two_pivot(b, depth);
            v = c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::verify_sorted;

    fn scrambled(n: u64) -> Vec<u64> {
        (0..n).map(|i| (i * 7919 + 13) % n).collect()
    }

    #[test]
    fn trivial_inputs() {
        let c = SortConfig::default();
        for f in [sort_one_pivot::<u64>, sort_two_pivot::<u64>, sort_classic::<u64>] {
            let mut e: Vec<u64> = vec![];
            f(&mut e, &c);
            assert!(e.is_empty());
            let mut one = vec![4u64];
            f(&mut one, &c);
            assert_eq!(one, vec![4]);
            let mut v = vec![3u64, 1, 2];
            f(&mut v, &c);
            assert_eq!(v, vec![1, 2, 3]);
        }
    }

    #[test]
    fn all_algorithms_sort_scrambled_input() {
        let input = scrambled(10_007);
        for alg in Algorithm::ALL {
            for b in [1, 3, 1024] {
                let c = SortConfig::builder().block_size(b).build().unwrap();
                let mut v = input.clone();
                sort(alg, &mut v, &c).unwrap();
                assert!(verify_sorted(&input, &v), "{alg} B={b}");
            }
        }
    }

    #[test]
    fn every_catalog_strategy_sorts() {
        let input: Vec<u64> = (0..70_000).map(|i| (i * 48271) % 1009).collect();
        for (name, s) in crate::pivot::strategy_catalog() {
            let alg = if s.pivots() == 1 {
                Algorithm::L1
            } else {
                Algorithm::L2
            };
            for site in [SampleSite::Front, SampleSite::Spread] {
                let c = SortConfig::builder()
                    .strategy(s.clone())
                    .sample_site(site)
                    .build()
                    .unwrap();
                let mut v = input.clone();
                sort(alg, &mut v, &c).unwrap();
                assert!(verify_sorted(&input, &v), "{name} {site:?}");
            }
        }
    }

    #[test]
    fn guard_off_still_sorts_duplicates() {
        let input: Vec<u64> = (0..5000).map(|i| i % 3).collect();
        let c = SortConfig::builder().equal_guard(false).build().unwrap();
        let mut v = input.clone();
        sort_two_pivot(&mut v, &c);
        assert!(verify_sorted(&input, &v));
    }

    #[test]
    fn config_validation() {
        assert_eq!(
            SortConfig::builder().block_size(0).build(),
            Err(ConfigError::ZeroBlockSize)
        );
        let s: PivotStrategy = "2 (1,3 of 5)".parse().unwrap();
        assert!(SortConfig::builder()
            .strategy(s.clone())
            .insertion_cutoff(4)
            .build()
            .is_err());
        let c = SortConfig::builder()
            .strategy(s.clone())
            .insertion_cutoff(5)
            .build()
            .unwrap();
        assert_eq!(c.insertion_cutoff_for(&s), 5);
        let mom = PivotStrategy::MedianOfMedians(PivotCount::One);
        let c = SortConfig::builder().strategy(mom.clone()).build().unwrap();
        assert_eq!(c.insertion_cutoff_for(&mom), 25);
        assert_eq!(
            SortConfig::default().insertion_cutoff_for(&PivotStrategy::default_for(PivotCount::One)),
            20
        );
        assert!(SortConfig::builder().insertion_cutoff(1).build().is_err());
    }

    #[test]
    fn pivot_count_mismatch_is_an_error() {
        let c = SortConfig::builder()
            .strategy("2 (1,3 of 5)".parse().unwrap())
            .build()
            .unwrap();
        let mut v = scrambled(100);
        assert!(matches!(
            sort(Algorithm::L1, &mut v, &c),
            Err(Error::Config(ConfigError::PivotCountMismatch { .. }))
        ));
        assert!(sort(Algorithm::Std, &mut v, &c).is_ok());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("quick".parse::<Algorithm>().is_err());
    }
}
