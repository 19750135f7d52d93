//! Pivot sampling.
//!
//! A sample vector `t = (t_0, ..., t_k)` describes choosing `k` pivots from a
//! sorted sample of `kappa = k + sum(t)` elements such that `t_i` sample
//! elements fall into group `i`. Strategies are named the way the benchmark
//! legends read them: `"2 (1,3 of 5)"` sorts five elements and takes the
//! first and third as pivots, a trailing `*` marks median-of-medians.

use std::fmt;
use std::str::FromStr;

use crate::error::ConfigError;
use crate::partition::insertion_sort_with;
use crate::tally::{NoTally, Site, Tally};

/// Elements examined by the median-of-medians strategies (five groups of five).
pub const MEDIAN_OF_MEDIANS_SAMPLE: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SampleVector {
    t: Vec<usize>,
}

impl SampleVector {
    pub fn new(t: Vec<usize>) -> Result<Self, ConfigError> {
        if t.len() < 2 {
            return Err(ConfigError::SampleVectorTooShort(t.len()));
        }
        Ok(SampleVector { t })
    }

    /// `count` copies of `value`, e.g. the all-ones vector of samplesort.
    pub fn uniform(count: usize, value: usize) -> Result<Self, ConfigError> {
        Self::new(vec![value; count])
    }

    pub fn entries(&self) -> &[usize] {
        &self.t
    }

    /// Number of pivots `k`.
    pub fn pivots(&self) -> usize {
        self.t.len() - 1
    }

    /// Sample elements in addition to the pivots.
    pub fn additional(&self) -> usize {
        self.t.iter().sum()
    }

    /// Total sample size `k + sum(t)`.
    pub fn kappa(&self) -> usize {
        self.pivots() + self.additional()
    }

    /// 0-based positions of the pivots within the sorted sample.
    pub fn pivot_positions(&self) -> Vec<usize> {
        let mut pos = Vec::with_capacity(self.pivots());
        let mut before = 0;
        for (i, &ti) in self.t[..self.pivots()].iter().enumerate() {
            before += ti;
            pos.push(i + before);
        }
        pos
    }
}

impl fmt::Display for SampleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.t.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PivotCount {
    One,
    Two,
}

impl PivotCount {
    pub fn get(self) -> usize {
        match self {
            PivotCount::One => 1,
            PivotCount::Two => 2,
        }
    }

    pub fn from_usize(k: usize) -> Result<Self, ConfigError> {
        match k {
            1 => Ok(PivotCount::One),
            2 => Ok(PivotCount::Two),
            _ => Err(ConfigError::UnsupportedPivotCount(k)),
        }
    }
}

/// Size-dependent switching between strategies.
///
/// Below `direct_below` pivots are taken directly, below `three_below` from a
/// sample of three, below `five_below` from a sample of five, and
/// median-of-medians beyond that.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdaptiveThresholds {
    pivots: PivotCount,
    direct_below: usize,
    three_below: usize,
    five_below: usize,
    three: SampleVector,
    five: SampleVector,
}

impl AdaptiveThresholds {
    pub fn new(
        pivots: PivotCount,
        direct_below: usize,
        three_below: usize,
        five_below: usize,
    ) -> Result<Self, ConfigError> {
        // Each sampled strategy must only be used on inputs longer than its sample.
        if direct_below <= 3
            || three_below < direct_below
            || three_below <= 5
            || five_below < three_below
            || five_below <= MEDIAN_OF_MEDIANS_SAMPLE
        {
            return Err(ConfigError::BadThresholds);
        }
        let (three, five) = match pivots {
            PivotCount::One => (vec![1, 1], vec![2, 2]),
            PivotCount::Two => (vec![0, 0, 1], vec![0, 1, 2]),
        };
        Ok(AdaptiveThresholds {
            pivots,
            direct_below,
            three_below,
            five_below,
            three: SampleVector { t: three },
            five: SampleVector { t: five },
        })
    }

    pub fn default_for(pivots: PivotCount) -> Self {
        Self::new(pivots, 128, 1024, 65536).expect("default thresholds are valid")
    }

    pub fn pivots(&self) -> PivotCount {
        self.pivots
    }

    pub fn bounds(&self) -> (usize, usize, usize) {
        (self.direct_below, self.three_below, self.five_below)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PivotStrategy {
    /// One pivot: the last element. Two pivots: the first and last element.
    Direct(PivotCount),
    /// Sort the sample and take the pivots at the positions given by `t`.
    FromSortedSample(SampleVector),
    /// Medians of five groups of five; one pivot takes their median, two
    /// pivots the first and third of the sorted medians.
    MedianOfMedians(PivotCount),
    Adaptive(AdaptiveThresholds),
}

/// A strategy with any size-dependent choice already made.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Resolved<'a> {
    Direct(PivotCount),
    Sorted(&'a SampleVector),
    MedianOfMedians(PivotCount),
}

impl Resolved<'_> {
    pub(crate) fn kappa(&self) -> usize {
        match self {
            Resolved::Direct(k) => k.get(),
            Resolved::Sorted(t) => t.kappa(),
            Resolved::MedianOfMedians(_) => MEDIAN_OF_MEDIANS_SAMPLE,
        }
    }

    /// Whether the strategy looks at a sample that can be gathered from
    /// across the slice.
    pub(crate) fn samples(&self) -> bool {
        !matches!(self, Resolved::Direct(_))
    }
}

impl PivotStrategy {
    pub fn default_for(pivots: PivotCount) -> Self {
        PivotStrategy::Adaptive(AdaptiveThresholds::default_for(pivots))
    }

    pub fn pivots(&self) -> usize {
        match self {
            PivotStrategy::Direct(k) | PivotStrategy::MedianOfMedians(k) => k.get(),
            PivotStrategy::FromSortedSample(t) => t.pivots(),
            PivotStrategy::Adaptive(a) => a.pivots.get(),
        }
    }

    /// Smallest insertion-sort cutoff for which every partitioning step has
    /// more elements than the strategy samples.
    pub fn required_cutoff(&self) -> usize {
        match self {
            PivotStrategy::Direct(k) => k.get(),
            PivotStrategy::FromSortedSample(t) => t.kappa(),
            PivotStrategy::MedianOfMedians(_) => MEDIAN_OF_MEDIANS_SAMPLE,
            PivotStrategy::Adaptive(a) => a.pivots.get(),
        }
    }

    /// Sample size used on a subproblem of length `n`.
    pub fn kappa_at(&self, n: usize) -> usize {
        self.resolve(n).kappa()
    }

    pub(crate) fn resolve(&self, n: usize) -> Resolved<'_> {
        match self {
            PivotStrategy::Direct(k) => Resolved::Direct(*k),
            PivotStrategy::FromSortedSample(t) => Resolved::Sorted(t),
            PivotStrategy::MedianOfMedians(k) => Resolved::MedianOfMedians(*k),
            PivotStrategy::Adaptive(a) => {
                if n < a.direct_below {
                    Resolved::Direct(a.pivots)
                } else if n < a.three_below {
                    Resolved::Sorted(&a.three)
                } else if n < a.five_below {
                    Resolved::Sorted(&a.five)
                } else {
                    Resolved::MedianOfMedians(a.pivots)
                }
            }
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PivotStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PivotStrategy::Direct(k) => write!(f, "{} (direct)", k.get()),
            PivotStrategy::Adaptive(a) => write!(f, "{} (adaptive)", a.pivots.get()),
            PivotStrategy::MedianOfMedians(PivotCount::One) => write!(f, "1 (3 of 5*)"),
            PivotStrategy::MedianOfMedians(PivotCount::Two) => write!(f, "2 (1,3 of 5*)"),
            PivotStrategy::FromSortedSample(t) => {
                let ranks: Vec<String> = t
                    .pivot_positions()
                    .iter()
                    .map(|p| (p + 1).to_string())
                    .collect();
                write!(f, "{} ({} of {})", t.pivots(), ranks.join(","), t.kappa())
            }
        }
    }
}

impl FromStr for PivotStrategy {
    type Err = ConfigError;

    /// Accepts the legend form `"k (R of S)"`, `"k (direct)"`,
    /// `"k (adaptive)"`, or a bare sample vector such as `"(0,1,2)"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ConfigError::UnknownStrategy(s.to_string());
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let t = parse_list(inner).ok_or_else(unknown)?;
            let t = SampleVector::new(t)?;
            PivotCount::from_usize(t.pivots())?;
            return Ok(PivotStrategy::FromSortedSample(t));
        }
        let open = s.find('(').ok_or_else(unknown)?;
        let k: usize = s[..open].trim().parse().map_err(|_| unknown())?;
        let k = PivotCount::from_usize(k)?;
        let inner = s[open + 1..].trim().strip_suffix(')').ok_or_else(unknown)?.trim();
        match inner {
            "direct" => return Ok(PivotStrategy::Direct(k)),
            "adaptive" => return Ok(PivotStrategy::default_for(k)),
            _ => {}
        }
        let (ranks, size) = inner.split_once(" of ").ok_or_else(unknown)?;
        let size = size.trim();
        let (size, mom) = match size.strip_suffix('*') {
            Some(rest) => (rest.trim(), true),
            None => (size, false),
        };
        let size: usize = size.parse().map_err(|_| unknown())?;
        let ranks = parse_list(ranks).ok_or_else(unknown)?;
        if ranks.len() != k.get() {
            return Err(unknown());
        }
        if mom {
            let expected: &[usize] = match k {
                PivotCount::One => &[3],
                PivotCount::Two => &[1, 3],
            };
            if size != 5 || ranks != expected {
                return Err(unknown());
            }
            return Ok(PivotStrategy::MedianOfMedians(k));
        }
        // Ranks are 1-based, strictly increasing, within the sample.
        let mut t = Vec::with_capacity(k.get() + 1);
        let mut prev = 0;
        for &r in &ranks {
            if r <= prev || r > size {
                return Err(unknown());
            }
            t.push(r - prev - 1);
            prev = r;
        }
        t.push(size - prev);
        Ok(PivotStrategy::FromSortedSample(SampleVector::new(t)?))
    }
}

fn parse_list(s: &str) -> Option<Vec<usize>> {
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

/// The strategies compared in the pivot-choice experiment, plus the
/// three-of-five median and the size-adaptive defaults.
pub fn strategy_catalog() -> Vec<(String, PivotStrategy)> {
    [
        "1 (direct)",
        "2 (direct)",
        "2 (1,2 of 3)",
        "1 (2 of 3)",
        "2 (1,3 of 5)",
        "2 (2,4 of 5)",
        "1 (3 of 5)",
        "1 (3 of 5*)",
        "2 (1,3 of 5*)",
        "1 (adaptive)",
        "2 (adaptive)",
    ]
    .into_iter()
    .map(|name| {
        let strategy: PivotStrategy = name.parse().expect("catalog names parse");
        (name.to_string(), strategy)
    })
    .collect()
}

/// Where pivots and already-sorted sample elements were left by
/// [`select_pivots`].
///
/// The partitioning region is `lower..len - upper`. With one pivot it sits at
/// the region's last position; with two pivots `p` is the region's first and
/// `q` its last element, and the `middle` elements after `p` are sorted sample
/// elements lying in `[p, q]`. The `lower` elements in front are `<= p`, the
/// `upper` elements behind are `>=` the largest pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PivotLayout {
    pub pivots: usize,
    pub lower: usize,
    pub middle: usize,
    pub upper: usize,
}

/// Sorts the sample at the front of `v` and moves the pivots into place.
///
/// # Panics
/// If `v` is not longer than the strategy's sample; shorter inputs are meant
/// for insertion sort.
pub fn select_pivots<T: Ord>(v: &mut [T], strategy: &PivotStrategy) -> PivotLayout {
    let resolved = strategy.resolve(v.len());
    select_with(v, resolved, &mut NoTally)
}

/// Swaps `kappa` evenly spread elements of `v` to its front, preserving their
/// left-to-right order.
pub fn gather_sample<T>(v: &mut [T], kappa: usize) {
    gather_with(v, kappa, &mut NoTally);
}

pub(crate) fn gather_with<T, C: Tally>(v: &mut [T], kappa: usize, tally: &mut C) {
    let n = v.len();
    debug_assert!(kappa < n);
    let mut swaps = 0;
    for j in 0..kappa {
        // pos > j, and positions increase with j.
        let pos = (2 * j + 1) * n / (2 * kappa);
        if pos != j {
            v.swap(j, pos);
            swaps += 1;
        }
    }
    tally.swaps(swaps);
    tally.sort_ma(Site::Sample, swaps);
}

pub(crate) fn select_with<T: Ord, C: Tally>(
    v: &mut [T],
    strategy: Resolved<'_>,
    tally: &mut C,
) -> PivotLayout {
    let n = v.len();
    assert!(
        n > strategy.kappa(),
        "slice of length {n} is too short for a sample of {}",
        strategy.kappa()
    );
    match strategy {
        Resolved::Direct(PivotCount::One) => PivotLayout::bare(1),
        Resolved::Direct(PivotCount::Two) => {
            tally.sort_cmp(Site::Sample, 1);
            tally.sort_ma(Site::Sample, 2);
            if v[0] > v[n - 1] {
                v.swap(0, n - 1);
                tally.swaps(1);
            }
            PivotLayout::bare(2)
        }
        Resolved::Sorted(t) => {
            let kappa = t.kappa();
            insertion_sort_with(&mut v[..kappa], tally, Site::Sample);
            let e = t.entries();
            match t.pivots() {
                1 => {
                    move_to_end(v, e[0], kappa - e[0], tally);
                    PivotLayout {
                        pivots: 1,
                        lower: e[0],
                        middle: 0,
                        upper: e[1],
                    }
                }
                2 => {
                    let q_pos = e[0] + e[1] + 1;
                    move_to_end(v, q_pos, kappa - q_pos, tally);
                    PivotLayout {
                        pivots: 2,
                        lower: e[0],
                        middle: e[1],
                        upper: e[2],
                    }
                }
                k => panic!("cannot sort with {k} pivots"),
            }
        }
        Resolved::MedianOfMedians(k) => {
            let mut medians = [0usize; 5];
            for (g, m) in medians.iter_mut().enumerate() {
                insertion_sort_with(&mut v[5 * g..5 * g + 5], tally, Site::Sample);
                *m = 5 * g + 2;
            }
            // Order the five median positions by value.
            let mut cmp = 0;
            for i in 1..5 {
                let mut j = i;
                while j > 0 {
                    cmp += 1;
                    if v[medians[j]] < v[medians[j - 1]] {
                        medians.swap(j, j - 1);
                        j -= 1;
                    } else {
                        break;
                    }
                }
            }
            tally.sort_cmp(Site::Sample, cmp);
            tally.sort_ma(Site::Sample, 2 * cmp);
            match k {
                PivotCount::One => {
                    v.swap(medians[2], n - 1);
                    tally.swaps(1);
                    tally.sort_ma(Site::Sample, 1);
                }
                PivotCount::Two => {
                    let (p, mut q) = (medians[0], medians[2]);
                    v.swap(0, p);
                    if q == 0 {
                        q = p;
                    }
                    v.swap(q, n - 1);
                    tally.swaps(2);
                    tally.sort_ma(Site::Sample, 2);
                }
            }
            PivotLayout::bare(k.get())
        }
    }
}

impl PivotLayout {
    fn bare(pivots: usize) -> Self {
        PivotLayout {
            pivots,
            lower: 0,
            middle: 0,
            upper: 0,
        }
    }
}

/// Moves `v[start..start + len]` to the end of `v`, keeping its order.
/// Constant work for a constant `len`; the displaced elements are permuted.
fn move_to_end<T, C: Tally>(v: &mut [T], start: usize, len: usize, tally: &mut C) {
    let n = v.len();
    let mut swaps = 0;
    for r in 0..len {
        let from = start + len - 1 - r;
        let to = n - 1 - r;
        if from != to {
            v.swap(from, to);
            swaps += 1;
        }
    }
    tally.swaps(swaps);
    tally.sort_ma(Site::Sample, swaps);
}
