use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Measure, Scheme};
use crate::error::{Error, Result};
use crate::pivot::SampleVector;

/// Largest `n_max` accepted by [`solve_recurrence_exact`].
pub const RECURRENCE_MAX_N: usize = 100_000;

/// Number type for the recurrence: `f64` for speed, [`BigRational`] for
/// exact small cases.
pub trait Scalar:
    Clone
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_ratio(num: u64, den: u64) -> Self;

    fn is_finite(&self) -> bool {
        true
    }

    /// Keeps `w` in range by rescaling `w` and the sums built from it.
    fn rescale(_w: &mut Self, _acc: &mut Self, _sum: &mut Self) {}
}

impl Scalar for f64 {
    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn rescale(w: &mut Self, acc: &mut Self, sum: &mut Self) {
        const BIG: f64 = 1e200;
        if *w > BIG {
            *w /= BIG;
            *acc /= BIG;
            *sum /= BIG;
        }
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

fn int<S: Scalar>(x: usize) -> S {
    S::from_ratio(x as u64, 1)
}

/// Expected cost of one partitioning step on `n > kappa` distinct elements,
/// counted the way the instrumented sorts count it: the non-sample elements
/// are scanned, the one-pivot schemes read each element smaller than the
/// pivot once more, the two-pivot scheme compares elements `<= q` with `p`
/// and touches elements `< p` again. The access counts include the boundary
/// accesses (2 with one pivot, 4 with two).
pub fn expected_step_cost<S: Scalar>(
    scheme: Scheme,
    measure: Measure,
    t: &SampleVector,
    n: usize,
) -> Result<S> {
    if t.entries().len() != scheme.pivots() + 1 {
        return Err(Error::SampleVectorLength {
            scheme: scheme.to_string(),
            expected: scheme.pivots() + 1,
            actual: t.entries().len(),
        });
    }
    let kappa = t.kappa();
    if n <= kappa {
        return Err(Error::EnumerationTooSmall { n, kappa });
    }
    let e = t.entries();
    let scanned = n - kappa;
    // Expected non-sample elements in groups 0..=g: their share of the
    // scanned elements.
    let below = |groups: usize| -> S {
        let weight: usize = e[..groups].iter().map(|ti| ti + 1).sum();
        S::from_ratio((weight * scanned) as u64, (kappa + 1) as u64)
    };
    let one = |m: Measure| -> S {
        match (scheme, m) {
            (Scheme::H1, _) => int(scanned),
            (Scheme::L1, Measure::Cmp) => int(scanned),
            (Scheme::L1, _) => int::<S>(scanned) + below(1) + int(2),
            (Scheme::L2, Measure::Cmp) => int::<S>(scanned) + below(2),
            (Scheme::L2, _) => int::<S>(scanned) + below(2) + below(1) + int(4),
            (Scheme::SampleSort { log2_pivots }, Measure::Cmp) => int(log2_pivots as usize * scanned),
            (Scheme::SampleSort { .. }, _) => int(3 * scanned),
        }
    };
    Ok(match measure {
        Measure::CmpPlusMa => one(Measure::Cmp) + one(Measure::Ma),
        m => one(m),
    })
}

/// Expected total cost `E(C_n)` for every `n <= n_max` under the sampling
/// recurrence
/// `E(C_n) = E(P_n) + sum_i sum_x Pr(a_i = x) E(C_x)` with
/// `Pr(a_i = x) = C(x, t_i) C(n - 1 - x, kappa - t_i - 1) / C(n, kappa)`,
/// where `a_i` is the size of subproblem `i`. `P_n` is
/// [`expected_step_cost`]; for `n <= kappa` the cost is `base(n)`, zero by
/// default. Takes `O(k n_max^2)` operations.
pub fn solve_recurrence_exact<S: Scalar>(
    scheme: Scheme,
    measure: Measure,
    t: &SampleVector,
    n_max: usize,
    base: Option<&dyn Fn(usize) -> S>,
) -> Result<Vec<S>> {
    if n_max > RECURRENCE_MAX_N {
        return Err(Error::RecurrenceTooLarge {
            n_max,
            max: RECURRENCE_MAX_N,
        });
    }
    let kappa = t.kappa();
    let mut c: Vec<S> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n <= kappa {
            c.push(base.map_or_else(S::zero, |f| f(n)));
            continue;
        }
        let mut total = expected_step_cost::<S>(scheme, measure, t, n)?;
        for &ti in t.entries() {
            // Unnormalized weights w(x) proportional to Pr(a_i = x), advanced
            // by their ratio; normalized by their sum at the end.
            let hi = n - kappa + ti;
            let mut w = S::one();
            let mut acc = S::zero();
            let mut sum = S::zero();
            for (x, cx) in c[..=hi].iter().enumerate().skip(ti) {
                acc = acc + w.clone() * cx.clone();
                sum = sum + w.clone();
                if x < hi {
                    let num = ((x + 1) * (hi - x)) as u64;
                    let den = ((x + 1 - ti) * (n - 1 - x)) as u64;
                    w = w * S::from_ratio(num, den);
                    S::rescale(&mut w, &mut acc, &mut sum);
                }
            }
            total = total + acc / sum;
        }
        if !total.is_finite() {
            return Err(Error::NonFinite(n));
        }
        c.push(total);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(t: &[usize]) -> SampleVector {
        SampleVector::new(t.to_vec()).unwrap()
    }

    fn closed_form(n: usize) -> f64 {
        let h: f64 = (1..=n).rev().map(|i| 1.0 / i as f64).sum();
        2.0 * (n as f64 + 1.0) * h - 4.0 * n as f64
    }

    #[test]
    fn classic_quicksort_exact() {
        let c: Vec<BigRational> =
            solve_recurrence_exact(Scheme::L1, Measure::Cmp, &sv(&[0, 0]), 6, None).unwrap();
        assert_eq!(c[0], BigRational::zero());
        assert_eq!(c[1], BigRational::zero());
        assert_eq!(c[2], BigRational::one());
        assert_eq!(c[3], BigRational::from_ratio(8, 3));
        // 2(n+1)H_n - 4n at n = 6: 14 * 49/20 - 24.
        assert_eq!(c[6], BigRational::from_ratio(103, 10));
    }

    #[test]
    fn float_matches_closed_form() {
        let c: Vec<f64> =
            solve_recurrence_exact(Scheme::L1, Measure::Cmp, &sv(&[0, 0]), 2000, None).unwrap();
        for (n, v) in c.iter().enumerate().skip(1) {
            let e = closed_form(n);
            assert!((v - e).abs() <= 1e-9 * e.max(1.0), "n={n}");
        }
    }

    #[test]
    fn base_cost_is_used() {
        let base = |n: usize| n as f64;
        let c: Vec<f64> =
            solve_recurrence_exact(Scheme::L1, Measure::Cmp, &sv(&[1, 1]), 4, Some(&base)).unwrap();
        assert_eq!(&c[..4], &[0.0, 1.0, 2.0, 3.0]);
        // n = 4: one scanned element, subproblems of size 1 and 2 either way.
        assert!((c[4] - (1.0 + 3.0)).abs() < 1e-12);
    }

    #[test]
    fn large_sample_stays_finite() {
        let c: Vec<f64> = solve_recurrence_exact(
            Scheme::SampleSort { log2_pivots: 3 },
            Measure::Ma,
            &sv(&[30; 9]),
            2000,
            None,
        )
        .unwrap();
        assert!(c.iter().all(|x| x.is_finite()));
        assert!(c[2000] > 0.0);
    }

    #[test]
    fn limits() {
        assert!(matches!(
            solve_recurrence_exact::<f64>(Scheme::L1, Measure::Cmp, &sv(&[0, 0]), RECURRENCE_MAX_N + 1, None),
            Err(Error::RecurrenceTooLarge { .. })
        ));
        assert!(expected_step_cost::<f64>(Scheme::L1, Measure::Cmp, &sv(&[1, 1]), 3).is_err());
        assert!(expected_step_cost::<f64>(Scheme::L2, Measure::Cmp, &sv(&[1, 1]), 30).is_err());
    }
}
