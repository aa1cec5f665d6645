use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalars belong to different groups")]
    GroupMismatch,
    #[error("invalid scalar group: {0}")]
    InvalidGroup(String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("duplicate relation for the pair {{{0}, {1}}}")]
    DuplicateRelation(String, String),
    #[error("generator `{0}` cannot be related to itself")]
    SelfRelation(String),
    #[error("presentation contains Eulerian relations")]
    EulerianNotSupported,
    #[error("empty generator subset")]
    EmptySubset,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("matrix is not multiplicatively antisymmetric")]
    NotMultiplicativelyAntisymmetric,
    #[error("rule {0} does not decrease in the deglex order")]
    NonDecreasingRule(String),
    #[error("duplicate leading word {0}")]
    DuplicateRule(String),
    #[error("system is not confluent at {0}")]
    NotConfluent(String),
    #[error("element is not normal: {0}")]
    NotNormal(String),
    #[error("generator `{0}` is not invertible")]
    NotInvertible(String),
    #[error("presentation is not admissible: {0}")]
    Inadmissible(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
