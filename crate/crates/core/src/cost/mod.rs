//! Expected-cost model of quicksort with pivot sampling.
//!
//! A scheme whose partitioning step costs `a * n + O(1)` on average, with
//! pivots chosen by sample vector `t`, sorts with `(a / H(t)) n ln n + O(n)`
//! expected cost, where
//! `H(t) = sum_i (t_i + 1) / (kappa + 1) * (H_{kappa+1} - H_{t_i + 1})`.
//! Values are exact rationals while `kappa <= EXACT_KAPPA_LIMIT`.

mod recurrence;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pivot::SampleVector;

pub use recurrence::{expected_step_cost, solve_recurrence_exact, Scalar, RECURRENCE_MAX_N};

/// Largest sample size evaluated in exact arithmetic.
pub const EXACT_KAPPA_LIMIT: usize = 300;

/// Largest number of candidate vectors [`best_t`] will enumerate.
pub const SEARCH_LIMIT: u128 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Hoare's crossing-pointer scheme, one pivot.
    H1,
    /// One-pivot block Lomuto.
    L1,
    /// Two-pivot block Lomuto.
    L2,
    /// Samplesort classification into `2^log2_pivots + 1` buckets.
    SampleSort { log2_pivots: u32 },
}

impl Scheme {
    pub fn pivots(self) -> usize {
        match self {
            Scheme::H1 | Scheme::L1 => 1,
            Scheme::L2 => 2,
            Scheme::SampleSort { log2_pivots } => 1usize << log2_pivots,
        }
    }

    fn check(self, t: &SampleVector) -> Result<()> {
        let expected = self.pivots() + 1;
        if t.entries().len() != expected {
            return Err(Error::SampleVectorLength {
                scheme: self.to_string(),
                expected,
                actual: t.entries().len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::H1 => f.write_str("H1"),
            Scheme::L1 => f.write_str("L1"),
            Scheme::L2 => f.write_str("L2"),
            Scheme::SampleSort { log2_pivots } => write!(f, "SS{log2_pivots}"),
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    /// `H1`, `L1`, `L2`, or `SS<l>` for samplesort with `2^l` pivots.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "H1" | "h1" => Ok(Scheme::H1),
            "L1" | "l1" => Ok(Scheme::L1),
            "L2" | "l2" => Ok(Scheme::L2),
            other => other
                .strip_prefix("SS")
                .and_then(|l| l.parse::<u32>().ok())
                .filter(|&l| (1..=16).contains(&l))
                .map(|log2_pivots| Scheme::SampleSort { log2_pivots })
                .ok_or_else(|| Error::UnknownScheme(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Cmp,
    Ma,
    CmpPlusMa,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Cmp, Measure::Ma, Measure::CmpPlusMa];
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Cmp => "cmp",
            Measure::Ma => "ma",
            Measure::CmpPlusMa => "cmp+ma",
        })
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace(' ', "").as_str() {
            "cmp" => Ok(Measure::Cmp),
            "ma" => Ok(Measure::Ma),
            "cmp+ma" => Ok(Measure::CmpPlusMa),
            _ => Err(Error::UnknownMeasure(s.to_string())),
        }
    }
}

/// A value that is exact when cheap enough, a double otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Real {
    Exact(BigRational),
    Float(f64),
}

impl Real {
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Real::Float(x) => *x,
        }
    }

    /// Rounded half away from zero to two decimals.
    pub fn round2(&self) -> f64 {
        match self {
            Real::Exact(r) => {
                let hundred = BigRational::from_integer(BigInt::from(100));
                (r * &hundred).round().to_f64().unwrap_or(f64::NAN) / 100.0
            }
            Real::Float(x) => (x * 100.0).round() / 100.0,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Real::Exact(r) => Some(r),
            Real::Float(_) => None,
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2}", self.round2())
    }
}

fn harmonic_table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut h = Vec::with_capacity(EXACT_KAPPA_LIMIT + 2);
        let mut acc = BigRational::zero();
        h.push(acc.clone());
        for i in 1..=EXACT_KAPPA_LIMIT + 1 {
            acc += BigRational::new(BigInt::from(1), BigInt::from(i));
            h.push(acc.clone());
        }
        h
    })
}

/// The harmonic number `H_n`, exactly.
///
/// # Panics
/// If `n > EXACT_KAPPA_LIMIT + 1`.
pub fn harmonic_exact(n: usize) -> BigRational {
    harmonic_table()[n].clone()
}

pub fn harmonic(n: usize) -> f64 {
    // Smallest terms first.
    (1..=n).rev().map(|i| 1.0 / i as f64).sum()
}

fn entropy_exact(t: &[usize], kappa: usize) -> BigRational {
    let h = harmonic_table();
    let top = &h[kappa + 1];
    let mut sum = BigRational::zero();
    for &ti in t {
        sum += BigRational::new(BigInt::from(ti + 1), BigInt::from(kappa + 1)) * (top - &h[ti + 1]);
    }
    sum
}

fn entropy_f64(t: &[usize], kappa: usize) -> f64 {
    let top = harmonic(kappa + 1);
    t.iter()
        .map(|&ti| (ti + 1) as f64 / (kappa + 1) as f64 * (top - harmonic(ti + 1)))
        .sum()
}

/// The normalizer `H(t)`.
pub fn entropy_h(t: &SampleVector) -> Real {
    let kappa = t.kappa();
    if kappa <= EXACT_KAPPA_LIMIT {
        Real::Exact(entropy_exact(t.entries(), kappa))
    } else {
        Real::Float(entropy_f64(t.entries(), kappa))
    }
}

/// Leading coefficient `a` of the expected partitioning cost `a * n + O(1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostConstant {
    pub scheme: Scheme,
    pub measure: Measure,
    pub a: BigRational,
}

/// `a` as a fraction `(numerator, denominator)`.
fn coefficient(scheme: Scheme, measure: Measure, t: &[usize]) -> (u128, u128) {
    let single = |m: Measure| -> (u128, u128) {
        let s: u128 = t.iter().map(|&x| x as u128).sum();
        let t0 = t[0] as u128;
        match (scheme, m) {
            (Scheme::H1, _) => (1, 1),
            (Scheme::L1, Measure::Cmp) => (1, 1),
            (Scheme::L1, _) => (s + 2 + t0 + 1, s + 2),
            (Scheme::L2, Measure::Cmp) => (s + 3 + t0 + t[1] as u128 + 2, s + 3),
            (Scheme::L2, _) => (s + 3 + 2 * t0 + t[1] as u128 + 3, s + 3),
            (Scheme::SampleSort { log2_pivots }, Measure::Cmp) => (log2_pivots as u128, 1),
            (Scheme::SampleSort { .. }, _) => (3, 1),
        }
    };
    match measure {
        Measure::CmpPlusMa => {
            let (n1, d1) = single(Measure::Cmp);
            let (n2, d2) = single(Measure::Ma);
            (n1 * d2 + n2 * d1, d1 * d2)
        }
        m => single(m),
    }
}

pub fn partition_constant(scheme: Scheme, measure: Measure, t: &SampleVector) -> Result<CostConstant> {
    scheme.check(t)?;
    let (num, den) = coefficient(scheme, measure, t.entries());
    Ok(CostConstant {
        scheme,
        measure,
        a: BigRational::new(BigInt::from(num), BigInt::from(den)),
    })
}

/// Coefficient of `n ln n` in the expected sorting cost: `a / H(t)`.
pub fn sorting_constant(scheme: Scheme, measure: Measure, t: &SampleVector) -> Result<Real> {
    let a = partition_constant(scheme, measure, t)?.a;
    Ok(match entropy_h(t) {
        Real::Exact(h) => Real::Exact(a / h),
        Real::Float(h) => Real::Float(a.to_f64().unwrap_or(f64::NAN) / h),
    })
}

fn sorting_constant_f64(scheme: Scheme, measure: Measure, t: &[usize]) -> f64 {
    let (num, den) = coefficient(scheme, measure, t);
    let kappa = t.len() - 1 + t.iter().sum::<usize>();
    num as f64 / den as f64 / entropy_f64(t, kappa)
}

/// One cell of the best-sample-vector table.
#[derive(Debug, Clone, PartialEq)]
pub struct CostRow {
    pub scheme: Scheme,
    /// Sample elements beyond the pivots, `kappa - k`.
    pub additional: usize,
    pub measure: Measure,
    pub best_t: SampleVector,
    pub constant: Real,
}

fn count_compositions(total: usize, parts: usize) -> u128 {
    // C(total + parts - 1, parts - 1), saturating.
    let mut c: u128 = 1;
    for i in 1..parts as u128 {
        c = c.saturating_mul(total as u128 + i) / i;
        if c > SEARCH_LIMIT * 1000 {
            return u128::MAX;
        }
    }
    c
}

/// Calls `f` on every composition of `total` into `parts` non-negative
/// parts, in lexicographic order.
fn for_each_composition(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    fn go(i: usize, left: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if i + 1 == buf.len() {
            buf[i] = left;
            f(buf);
            return;
        }
        for x in 0..=left {
            buf[i] = x;
            go(i + 1, left - x, buf, f);
        }
    }
    let mut buf = vec![0; parts];
    go(0, total, &mut buf, f);
}

/// The sample vector with `additional` extra elements minimizing the sorting
/// constant; ties go to the lexicographically smallest vector.
pub fn best_t(scheme: Scheme, measure: Measure, additional: usize) -> Result<CostRow> {
    let parts = scheme.pivots() + 1;
    let count = count_compositions(additional, parts);
    if count > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge {
            count,
            max: SEARCH_LIMIT,
        });
    }
    // Screen in double precision, then decide among near-minimal candidates
    // exactly.
    let mut scored: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut best = f64::INFINITY;
    for_each_composition(additional, parts, &mut |t| {
        let c = sorting_constant_f64(scheme, measure, t);
        if c <= best * (1.0 + 1e-9) {
            best = best.min(c);
            scored.push((t.to_vec(), c));
        }
    });
    let mut winner: Option<(SampleVector, Real)> = None;
    for (t, c) in scored {
        if c > best * (1.0 + 1e-9) {
            continue;
        }
        let t = SampleVector::new(t)?;
        let value = sorting_constant(scheme, measure, &t)?;
        let better = match &winner {
            None => true,
            Some((_, w)) => match (&value, w) {
                (Real::Exact(a), Real::Exact(b)) => a < b,
                _ => value.to_f64() < w.to_f64(),
            },
        };
        if better {
            winner = Some((t, value));
        }
    }
    let (best_t, constant) = winner.expect("at least one composition exists");
    Ok(CostRow {
        scheme,
        additional,
        measure,
        best_t,
        constant,
    })
}

/// Additional sample sizes tabulated per scheme.
pub fn table_sample_sizes(scheme: Scheme) -> &'static [usize] {
    match scheme {
        Scheme::L2 => &[0, 3, 5, 11],
        _ => &[0, 2, 4, 10],
    }
}

/// Best sample vectors for H1, L1 and L2 at four sample sizes each and all
/// three measures.
pub fn table1() -> Vec<CostRow> {
    let mut rows = Vec::with_capacity(36);
    for scheme in [Scheme::H1, Scheme::L1, Scheme::L2] {
        for &additional in table_sample_sizes(scheme) {
            for measure in Measure::ALL {
                rows.push(best_t(scheme, measure, additional).expect("table cells are small"));
            }
        }
    }
    rows
}

/// Aligned plain-text rendering of cost rows.
pub fn format_table(rows: &[CostRow]) -> String {
    let mut out = format!("{:<6} {:>4}  {:<7} {:>8}  {}\n", "algo", "AS", "cost", "n ln n", "t");
    for r in rows {
        out.push_str(&format!(
            "{:<6} {:>4}  {:<7} {:>8.2}  {}\n",
            r.scheme.to_string(),
            r.additional,
            r.measure.to_string(),
            r.constant.round2(),
            r.best_t
        ));
    }
    out
}
