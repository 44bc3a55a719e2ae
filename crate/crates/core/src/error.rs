use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants are grouped by the module that produces them, but share one
/// type so results compose without conversion boilerplate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // lattice
    #[error("frame parameters must be positive, got ({m},{n})")]
    NonPositive { m: i64, n: i64 },
    #[error("frame ({m},{n}) is not coprime (gcd {gcd})")]
    NonCoprime { m: usize, n: usize, gcd: usize },
    #[error("malformed frame text {0:?}, expected \"m,n\"")]
    BadFrameText(String),
    #[error("unexpected letter {letter:?} at offset {offset}")]
    BadAlphabet { letter: char, offset: usize },
    #[error("word has {ups} up-steps and {downs} down-steps, frame ({m},{n}) needs {n} and {m}")]
    WrongStepCounts {
        m: usize,
        n: usize,
        ups: usize,
        downs: usize,
    },
    #[error("path is not a Dyck path")]
    NotDyck,
    #[error("frame mismatch: ({0},{1}) vs ({2},{3})")]
    FrameMismatch(usize, usize, usize, usize),

    // ranks
    #[error("rank set does not contain 0")]
    MissingZero,
    #[error("rank set has {got} distinct entries, expected {expected}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("not a valid rank set: {0}")]
    InvalidRankSet(String),
    #[error("rank sum does not give an integral area")]
    NonIntegralArea,

    // sweep
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("compatibility graph is not a single cycle")]
    NotACycle,
    #[error("propagated ranks are not strictly increasing")]
    NotIncreasing,

    // inversion
    #[error("operation undefined on the base path R_0")]
    IsBasePath,
    #[error("precondition violated: {0}")]
    PrecondViolated(String),
    #[error("shift n - r^L_(s-1) = {0} is not positive")]
    NonPositiveShift(i64),
    #[error("rank {0} expected in the left rank set is missing")]
    MissingDeltaRank(i64),
    #[error("label W_{index} does not exist (m = {m})")]
    LabelOutOfRange { index: usize, m: usize },
    #[error("frame ({m},{n}) is not a Fuss frame")]
    NotFussFrame { m: usize, n: usize },
    #[error("SW word has no compatible rank set: {0}")]
    InvalidSigma(String),
    #[error("no preimage found for {0}")]
    NoPreimage(String),
    #[error("algorithm {algorithm} does not apply to frame ({m},{n})")]
    AlgorithmInapplicable {
        algorithm: &'static str,
        m: usize,
        n: usize,
    },

    // oracle
    #[error("frame has {count} Dyck paths, over the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
