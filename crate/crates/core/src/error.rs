use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("polynomial is not a perfect square")]
    NotASquare,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("view {view} is degenerate: the first two points share the same y coordinate after the first rotations")]
    DegenerateView { view: usize },
    #[error("a point lies behind the camera")]
    BehindCamera,

    #[error("Euler angle formula has a vanishing denominator")]
    GimbalDegenerate,
    #[error("translation ratio has a vanishing denominator")]
    DegenerateTranslation,
    #[error("clearing factor does not divide the constraint exactly")]
    ClearingFailed,
    #[error("polynomial lacks the expected u -> -1/u symmetry")]
    NotSymmetric,
    #[error("invalid binomial index pair ({0}, {1})")]
    BadIndex(i64, i64),

    #[error("denominator of the w formula vanishes for every constraint pair")]
    WDenominatorZero,
    #[error("1 + s*u vanishes")]
    DegenerateV,
    #[error("twisted-pair transform is undefined here")]
    DegenerateTwist,
    #[error("no cheirality-consistent configuration")]
    NoCheiralConfig,
    #[error("viewing rays of a point are parallel")]
    ParallelRays,
    #[error("translation has a vanishing z component")]
    DegenerateTz,
    #[error("no real root of the eliminant yields a valid pose")]
    NoSolution,

    #[error("zero vector")]
    ZeroVector,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
