use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not divisible: {0}")]
    NotDivisible(String),
    #[error("degree of the zero polynomial is undefined")]
    ZeroDegree,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("points are not pairwise distinct")]
    DuplicatePoints,
    #[error("at least two points are required")]
    TooFewPoints,
    #[error("multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("derivation is zero")]
    ZeroDerivation,
    #[error("derivation is not a member of the module")]
    NonMember,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("total multiplicity must be even, got {0}")]
    OddTotal(u32),
    #[error("block sizes invalid: {0}")]
    BlockSize(String),
    #[error("failed to certify a free basis: {0}")]
    Certification(String),
    #[error("index {index} out of range for {len} items")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable short code used in structured CLI errors.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "not_square",
            Error::DivisionByZero => "division_by_zero",
            Error::NotDivisible(_) => "not_divisible",
            Error::ZeroDegree => "zero_degree",
            Error::InvalidInput(_) => "invalid_input",
            Error::DuplicatePoints => "duplicate_points",
            Error::TooFewPoints => "too_few_points",
            Error::ZeroMultiplicity => "zero_multiplicity",
            Error::ZeroDerivation => "zero_derivation",
            Error::NonMember => "non_member",
            Error::Hypothesis(_) => "hypothesis",
            Error::OddTotal(_) => "odd_total",
            Error::BlockSize(_) => "block_size",
            Error::Certification(_) => "certification",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
