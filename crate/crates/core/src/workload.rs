//! Benchmark inputs of 64-bit keys.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Generator behind the seeded distributions, recorded in benchmark output.
pub const PRNG_NAME: &str = "ChaCha8Rng(seed_from_u64(seed), stream=trial)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DistributionKind {
    /// Random permutation of `1..=n`.
    Permutation,
    /// `i mod floor(sqrt(n))`.
    Sawtooth,
    /// Uniform in `[0, n)`, reduced `mod floor(sqrt(n))`.
    RandomDup,
    /// `i`.
    Sorted,
    /// `n - 1 - i`.
    Reversed,
    /// All ones.
    Equal,
    /// `(i^8 mod n + floor(n/2)) mod n`.
    EightDup,
}

impl DistributionKind {
    pub const ALL: [DistributionKind; 7] = [
        DistributionKind::Permutation,
        DistributionKind::Sawtooth,
        DistributionKind::RandomDup,
        DistributionKind::Sorted,
        DistributionKind::Reversed,
        DistributionKind::Equal,
        DistributionKind::EightDup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DistributionKind::Permutation => "Permutation",
            DistributionKind::Sawtooth => "Sawtooth",
            DistributionKind::RandomDup => "RandomDup",
            DistributionKind::Sorted => "Sorted",
            DistributionKind::Reversed => "Reversed",
            DistributionKind::Equal => "Equal",
            DistributionKind::EightDup => "EightDup",
        }
    }

    /// Whether the seed affects the generated keys.
    pub fn is_seeded(self) -> bool {
        matches!(self, DistributionKind::Permutation | DistributionKind::RandomDup)
    }
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistributionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| Error::UnknownDistribution(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Distribution {
    pub kind: DistributionKind,
    pub n: usize,
    pub seed: u64,
    /// Independent stream of the seeded generator, one per trial.
    pub stream: u64,
}

impl Distribution {
    pub fn new(kind: DistributionKind, n: usize, seed: u64) -> Self {
        Distribution {
            kind,
            n,
            seed,
            stream: 0,
        }
    }

    pub fn with_stream(self, stream: u64) -> Self {
        Distribution { stream, ..self }
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

fn pow_mod(base: u64, exp: u32, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut result = 1 % m;
    let mut b = base as u128 % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

pub fn generate(d: &Distribution) -> Vec<u64> {
    let n = d.n as u64;
    let root = n.isqrt().max(1);
    match d.kind {
        DistributionKind::Permutation => {
            let mut v: Vec<u64> = (1..=n).collect();
            v.shuffle(&mut d.rng());
            v
        }
        DistributionKind::Sawtooth => (0..n).map(|i| i % root).collect(),
        DistributionKind::RandomDup => {
            let mut rng = d.rng();
            (0..n).map(|_| rng.gen_range(0..n) % root).collect()
        }
        DistributionKind::Sorted => (0..n).collect(),
        DistributionKind::Reversed => (0..n).rev().collect(),
        DistributionKind::Equal => vec![1; d.n],
        DistributionKind::EightDup => (0..n)
            .map(|i| (pow_mod(i, 8, n) + n / 2) % n)
            .collect(),
    }
}
