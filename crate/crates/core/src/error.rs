use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while reading, completing or measuring lists.
///
/// Every variant except [`Error::Io`] is an input-validation failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate token {0:?} in ranked list")]
    DuplicateToken(String),

    #[error("empty token on line {line}")]
    EmptyToken { line: usize },

    #[error("malformed json: {0}")]
    MalformedJson(String),

    #[error("both lists are empty")]
    EmptyUnion,

    #[error("lists are not permutations of each other")]
    NotPermutations,

    #[error("invalid rank vector: {0}")]
    InvalidRanks(String),

    #[error("non-positive weight {value} for token {token:?}")]
    NonPositiveWeight { token: String, value: f64 },

    #[error("invalid weight table: {0}")]
    InvalidWeights(String),

    #[error("undefined normalization: denominator is zero for n = {n}")]
    UndefinedNormalization { n: usize },

    #[error("value {0} outside [0, 1]; the signed scale is only defined on the unit interval")]
    OutsideUnitInterval(f64),

    #[error("permutation size {n} out of range {min}..={max}")]
    SizeOutOfRange { n: usize, min: usize, max: usize },

    #[error("frequency table is empty")]
    EmptyTable,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad input rather than by the environment.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::MalformedJson(e.to_string())
    }
}
