use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group closure exceeds the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generators have inconsistent degrees ({expected} vs {found})")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("series did not stabilize within {0} steps")]
    IterationBound(usize),
    #[error("presentation error: {0}")]
    Presentation(String),
    #[error("declared order {declared} but construction produced {actual}")]
    OrderMismatch { declared: usize, actual: usize },
    #[error("bad group input: {0}")]
    Input(String),
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("could not parse character table: {0}")]
    Parse(String),
    #[error("character table validation failed: {0}")]
    ValidationFailed(String),
    #[error("no simple spectrum after {0} random combinations")]
    DegenerateSpectrum(usize),
    #[error("power map for prime {0} is missing")]
    MissingPowerMap(u64),
    #[error("{classes} classes exceeds the limit of {limit}")]
    TooManyClasses { classes: usize, limit: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("value {value} is not within tolerance of an integer (residual {residual:e})")]
    NonIntegral { value: f64, residual: f64 },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid argument: {0}")]
    Invalid(String),
}
