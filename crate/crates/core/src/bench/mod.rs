//! Benchmark protocol: repeated verified trials on shared inputs, sweeps over
//! block size and pivot strategy, and the paired-trial significance rule.

mod csv_io;

use std::collections::{BTreeMap, BTreeSet};
use std::hint::black_box;
use std::time::Instant;

use crate::check::verify_sorted;
use crate::error::{Error, Result};
use crate::instrument::{instrumented_sort, Counters};
use crate::pivot::{strategy_catalog, PivotCount};
use crate::sort::{sort, Algorithm, SortConfig};
use crate::workload::{generate, Distribution, DistributionKind};

pub use csv_io::{read_counter_columns, write_records, write_summary, RECORD_HEADER};

/// One algorithm and configuration taking part in a benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct Contender {
    pub label: String,
    pub algorithm: Algorithm,
    pub config: SortConfig,
}

impl Contender {
    pub fn new(algorithm: Algorithm, config: SortConfig) -> Self {
        Contender {
            label: algorithm.name().to_string(),
            algorithm,
            config,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn strategy_name(&self) -> String {
        match self.algorithm.pivots() {
            Some(k) => self.config.strategy_for(k).to_string(),
            None => "-".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchPlan {
    pub contenders: Vec<Contender>,
    pub distributions: Vec<DistributionKind>,
    pub sizes: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    /// Also run an instrumented sort per trial and record its counters.
    pub counters: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub algorithm: String,
    pub strategy: String,
    pub distribution: DistributionKind,
    pub n: usize,
    pub trial: u64,
    pub seed: u64,
    pub block_size: usize,
    pub elapsed_ns: u64,
    pub counters: Option<Counters>,
}

/// `n ln n`, at least 1.
pub fn n_ln_n(n: usize) -> f64 {
    let n = n as f64;
    (n * n.ln()).max(1.0)
}

impl BenchRecord {
    pub fn ns_per_n_ln_n(&self) -> f64 {
        self.elapsed_ns as f64 / n_ln_n(self.n)
    }
}

fn timed_sort(c: &Contender, input: &[u64]) -> Result<(u64, Vec<u64>)> {
    let mut v = input.to_vec();
    let start = Instant::now();
    sort(c.algorithm, black_box(&mut v), &c.config)?;
    let elapsed = start.elapsed();
    black_box(&v);
    Ok(((elapsed.as_nanos() as u64).max(1), v))
}

/// Runs every contender on every (distribution, size, trial) input.
///
/// Trial `j` of a cell uses stream `j` of the seeded generator, so all
/// contenders see identical inputs. Each cell starts with one discarded
/// warm-up run per contender. Every output is verified before its timing is
/// kept.
pub fn run_bench(plan: &BenchPlan) -> Result<Vec<BenchRecord>> {
    if plan.trials == 0 {
        return Err(Error::NoTrials);
    }
    for c in &plan.contenders {
        c.config.check_pivots(c.algorithm)?;
    }
    let mut records = Vec::new();
    for &kind in &plan.distributions {
        for &n in &plan.sizes {
            let dist = Distribution::new(kind, n, plan.seed);
            let warm = generate(&dist);
            for c in &plan.contenders {
                timed_sort(c, &warm)?;
            }
            for trial in 0..plan.trials {
                let input = generate(&dist.with_stream(trial));
                for c in &plan.contenders {
                    let failed = || Error::VerificationFailed {
                        algorithm: c.label.clone(),
                        distribution: kind.to_string(),
                        n,
                        trial,
                        seed: plan.seed,
                    };
                    let (elapsed_ns, out) = timed_sort(c, &input)?;
                    if !verify_sorted(&input, &out) {
                        return Err(failed());
                    }
                    let counters = if plan.counters && c.algorithm.is_instrumented() {
                        let mut v = input.clone();
                        let counters = instrumented_sort(c.algorithm, &mut v, &c.config)?;
                        if v != out {
                            return Err(failed());
                        }
                        Some(counters)
                    } else {
                        None
                    };
                    records.push(BenchRecord {
                        algorithm: c.label.clone(),
                        strategy: c.strategy_name(),
                        distribution: kind,
                        n,
                        trial,
                        seed: plan.seed,
                        block_size: c.config.block_size(),
                        elapsed_ns,
                        counters,
                    });
                }
            }
        }
    }
    Ok(records)
}

/// Mean over the trials of one (algorithm, strategy, block size,
/// distribution, n) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub algorithm: String,
    pub strategy: String,
    pub block_size: usize,
    pub distribution: DistributionKind,
    pub n: usize,
    pub trials: u64,
    pub mean_ns: f64,
    pub mean_ns_per_n_ln_n: f64,
    pub mean_total_cmp: Option<f64>,
    pub mean_total_ma: Option<f64>,
}

pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    type Key = (DistributionKind, usize, String, String, usize);
    let mut order: Vec<Key> = Vec::new();
    let mut cells: BTreeMap<Key, Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        let key = (
            r.distribution,
            r.n,
            r.algorithm.clone(),
            r.strategy.clone(),
            r.block_size,
        );
        let cell = cells.entry(key.clone()).or_default();
        if cell.is_empty() {
            order.push(key);
        }
        cell.push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let cell = &cells[&key];
            let count = cell.len() as f64;
            let mean = |f: &dyn Fn(&BenchRecord) -> f64| cell.iter().map(|r| f(r)).sum::<f64>() / count;
            let counter_mean = |f: fn(&Counters) -> u64| -> Option<f64> {
                cell.iter()
                    .map(|r| r.counters.as_ref().map(|c| f(c) as f64))
                    .sum::<Option<f64>>()
                    .map(|s| s / count)
            };
            let (distribution, n, algorithm, strategy, block_size) = key;
            SummaryRow {
                algorithm,
                strategy,
                block_size,
                distribution,
                n,
                trials: cell.len() as u64,
                mean_ns: mean(&|r| r.elapsed_ns as f64),
                mean_ns_per_n_ln_n: mean(&|r| r.ns_per_n_ln_n()),
                mean_total_cmp: counter_mean(|c| c.total_cmp),
                mean_total_ma: counter_mean(|c| c.total_ma),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignificanceReport {
    pub algo_a: String,
    pub algo_b: String,
    pub wins: u64,
    pub trials: u64,
    pub win_fraction: f64,
    /// Whether `a` was strictly faster in at least 95% of the trials.
    pub significant: bool,
}

impl SignificanceReport {
    pub fn from_counts(algo_a: &str, algo_b: &str, wins: u64, trials: u64) -> Self {
        assert!(wins <= trials && trials > 0);
        SignificanceReport {
            algo_a: algo_a.to_string(),
            algo_b: algo_b.to_string(),
            wins,
            trials,
            win_fraction: wins as f64 / trials as f64,
            // Integer test keeps the 95% boundary exact.
            significant: wins * 100 >= trials * 95,
        }
    }
}

/// Pairs the records of `algo_a` and `algo_b` by (distribution, n, trial)
/// and counts the pairs where `a` was strictly faster.
pub fn significance(records: &[BenchRecord], algo_a: &str, algo_b: &str) -> Result<SignificanceReport> {
    let times = |label: &str| -> BTreeMap<(DistributionKind, usize, u64), u64> {
        records
            .iter()
            .filter(|r| r.algorithm == label)
            .map(|r| ((r.distribution, r.n, r.trial), r.elapsed_ns))
            .collect()
    };
    let a = times(algo_a);
    let b = times(algo_b);
    let mismatch = || Error::MismatchedTrials {
        a: algo_a.to_string(),
        b: algo_b.to_string(),
    };
    let keys_a: BTreeSet<_> = a.keys().collect();
    let keys_b: BTreeSet<_> = b.keys().collect();
    if keys_a != keys_b {
        return Err(mismatch());
    }
    if a.is_empty() {
        return Err(Error::NoTrials);
    }
    let wins = a.iter().filter(|(k, ta)| **ta < b[k]).count() as u64;
    Ok(SignificanceReport::from_counts(algo_a, algo_b, wins, a.len() as u64))
}

/// Block sizes `2, 4, ..., 2^14`.
pub fn default_block_sizes() -> Vec<usize> {
    (1..=14).map(|e| 1usize << e).collect()
}

fn with_block(base: &SortConfig, b: usize) -> Result<SortConfig> {
    let mut builder = SortConfig::builder()
        .block_size(b)
        .equal_guard(base.equal_guard())
        .sample_site(base.sample_site());
    if let Some(s) = base.strategy() {
        builder = builder.strategy(s.clone());
    }
    Ok(builder.build()?)
}

/// Mean time per block size for L1 and L2 (default strategies).
pub fn sweep_block_size(
    sizes: &[usize],
    n: usize,
    distribution: DistributionKind,
    trials: u64,
    seed: u64,
) -> Result<Vec<SummaryRow>> {
    let mut contenders = Vec::new();
    for &b in sizes {
        for alg in [Algorithm::L1, Algorithm::L2] {
            contenders.push(Contender::new(alg, with_block(&SortConfig::default(), b)?));
        }
    }
    let plan = BenchPlan {
        contenders,
        distributions: vec![distribution],
        sizes: vec![n],
        trials,
        seed,
        counters: false,
    };
    Ok(summarize(&run_bench(&plan)?))
}

/// The block size with the lowest mean time for `algorithm`.
pub fn fastest_block_size(rows: &[SummaryRow], algorithm: &str) -> Option<usize> {
    rows.iter()
        .filter(|r| r.algorithm == algorithm)
        .min_by(|a, b| a.mean_ns.total_cmp(&b.mean_ns))
        .map(|r| r.block_size)
}

/// Every catalog strategy, on L1 or L2 by its pivot count.
pub fn sweep_pivot(
    n: usize,
    distribution: DistributionKind,
    trials: u64,
    seed: u64,
    counters: bool,
    block_size: usize,
) -> Result<Vec<SummaryRow>> {
    let mut contenders = Vec::new();
    for (_, strategy) in strategy_catalog() {
        let alg = if strategy.pivots() == PivotCount::One.get() {
            Algorithm::L1
        } else {
            Algorithm::L2
        };
        let config = SortConfig::builder()
            .strategy(strategy)
            .block_size(block_size)
            .build()?;
        contenders.push(Contender::new(alg, config));
    }
    let plan = BenchPlan {
        contenders,
        distributions: vec![distribution],
        sizes: vec![n],
        trials,
        seed,
        counters,
    };
    Ok(summarize(&run_bench(&plan)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(alg: &str, trial: u64, ns: u64) -> BenchRecord {
        BenchRecord {
            algorithm: alg.to_string(),
            strategy: "-".to_string(),
            distribution: DistributionKind::Permutation,
            n: 100,
            trial,
            seed: 0,
            block_size: 1024,
            elapsed_ns: ns,
            counters: None,
        }
    }

    fn paired(trials: u64, wins: u64) -> Vec<BenchRecord> {
        let mut v = Vec::new();
        for t in 0..trials {
            v.push(record("a", t, if t < wins { 10 } else { 20 }));
            v.push(record("b", t, 15));
        }
        v
    }

    #[test]
    fn significance_boundaries() {
        let r = significance(&paired(600, 600), "a", "b").unwrap();
        assert_eq!(r.win_fraction, 1.0);
        assert!(r.significant);
        let r = significance(&paired(600, 569), "a", "b").unwrap();
        assert!((r.win_fraction - 0.9483).abs() < 5e-5);
        assert!(!r.significant);
        let r = significance(&paired(600, 570), "a", "b").unwrap();
        assert_eq!(r.win_fraction, 0.95);
        assert!(r.significant);
    }

    #[test]
    fn ties_are_not_wins() {
        let recs = vec![record("a", 0, 5), record("b", 0, 5)];
        let r = significance(&recs, "a", "b").unwrap();
        assert_eq!(r.wins, 0);
    }

    #[test]
    fn mismatched_trials_rejected() {
        let mut recs = paired(3, 3);
        recs.pop();
        assert!(matches!(
            significance(&recs, "a", "b"),
            Err(Error::MismatchedTrials { .. })
        ));
        assert!(matches!(significance(&[], "a", "b"), Err(Error::NoTrials)));
    }

    #[test]
    fn tiny_bench_runs_and_verifies() {
        let plan = BenchPlan {
            contenders: Algorithm::ALL
                .iter()
                .map(|&a| Contender::new(a, SortConfig::default()))
                .collect(),
            distributions: vec![DistributionKind::Permutation],
            sizes: vec![2],
            trials: 1,
            seed: 1,
            counters: true,
        };
        let recs = run_bench(&plan).unwrap();
        assert_eq!(recs.len(), 4);
        assert!(recs.iter().all(|r| r.elapsed_ns > 0));
        assert!(recs.iter().find(|r| r.algorithm == "std").unwrap().counters.is_none());
        assert!(recs.iter().find(|r| r.algorithm == "L2").unwrap().counters.is_some());
    }

    #[test]
    fn zero_trials_rejected() {
        let plan = BenchPlan {
            contenders: vec![Contender::new(Algorithm::L1, SortConfig::default())],
            distributions: vec![DistributionKind::Sorted],
            sizes: vec![10],
            trials: 0,
            seed: 0,
            counters: false,
        };
        assert_eq!(run_bench(&plan), Err(Error::NoTrials));
    }

    #[test]
    fn block_sweep_shape() {
        let rows = sweep_block_size(&default_block_sizes(), 2000, DistributionKind::Permutation, 1, 3)
            .unwrap();
        assert_eq!(rows.len(), 28);
        assert!(fastest_block_size(&rows, "L1").is_some());
        let rows = sweep_block_size(&[1], 500, DistributionKind::RandomDup, 2, 3).unwrap();
        assert_eq!(rows.len(), 2);
    }

    #[test]
    fn pivot_sweep_covers_catalog() {
        let rows = sweep_pivot(3000, DistributionKind::Permutation, 1, 5, true, 1024).unwrap();
        assert_eq!(rows.len(), strategy_catalog().len());
        assert!(rows.iter().all(|r| r.mean_total_cmp.is_some()));
    }
}
