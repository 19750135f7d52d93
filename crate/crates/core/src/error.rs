use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("block size must be at least 1")]
    ZeroBlockSize,
    #[error("insertion cutoff {cutoff} is below the sample size {kappa} required by strategy `{strategy}`")]
    CutoffBelowSample {
        cutoff: usize,
        kappa: usize,
        strategy: String,
    },
    #[error("sample vector needs at least two entries, got {0}")]
    SampleVectorTooShort(usize),
    #[error("sorting supports one or two pivots, strategy has {0}")]
    UnsupportedPivotCount(usize),
    #[error("adaptive thresholds must satisfy 3 < direct_below <= three_below, 5 < three_below <= five_below and 25 < five_below")]
    BadThresholds,
    #[error("unknown pivot strategy `{0}`")]
    UnknownStrategy(String),
    #[error("strategy `{strategy}` selects {strategy_pivots} pivot(s) but algorithm `{algorithm}` needs {algorithm_pivots}")]
    PivotCountMismatch {
        algorithm: String,
        algorithm_pivots: usize,
        strategy: String,
        strategy_pivots: usize,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("unknown algorithm `{0}` (expected one of classic, L1, L2, std)")]
    UnknownAlgorithm(String),
    #[error("algorithm `{0}` has no instrumented variant")]
    NotInstrumented(String),
    #[error("unknown distribution `{0}`")]
    UnknownDistribution(String),
    #[error("n = {n} is too large for exhaustive enumeration (max {max})")]
    EnumerationTooLarge { n: usize, max: usize },
    #[error("n = {n} is too small for a partitioning step with sample size {kappa}")]
    EnumerationTooSmall { n: usize, kappa: usize },
    #[error("scheme {scheme} needs a sample vector of length {expected}, got {actual}")]
    SampleVectorLength {
        scheme: String,
        expected: usize,
        actual: usize,
    },
    #[error("unknown scheme `{0}` (expected H1, L1, L2 or SS<l>)")]
    UnknownScheme(String),
    #[error("unknown cost measure `{0}` (expected cmp, ma or cmp+ma)")]
    UnknownMeasure(String),
    #[error("{count} candidate sample vectors exceed the search limit of {max}")]
    SearchTooLarge { count: u128, max: u128 },
    #[error("n_max = {n_max} exceeds the recurrence limit of {max}")]
    RecurrenceTooLarge { n_max: usize, max: usize },
    #[error("recurrence produced a non-finite value at n = {0}")]
    NonFinite(usize),
    #[error("{algorithm} left {distribution} (n = {n}, trial {trial}, seed {seed}) unsorted or changed its elements")]
    VerificationFailed {
        algorithm: String,
        distribution: String,
        n: usize,
        trial: u64,
        seed: u64,
    },
    #[error("at least one trial is required")]
    NoTrials,
    #[error("records of `{a}` and `{b}` cover different trials")]
    MismatchedTrials { a: String, b: String },
    #[error("csv: {0}")]
    Csv(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
