use thiserror::Error;

/// Every failure the library can report.
///
/// Indices carried by variants are 1-based, matching the positions users
/// pass in.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequences must have at least one term")]
    EmptySequence,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("first term is zero; normalize the head first")]
    HeadZero,
    #[error("first two terms are both zero")]
    DegenerateHead,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("term {index} is not divisible by the divisor")]
    NotDivisible { index: usize },
    #[error("cannot divide by zero")]
    ZeroScale,
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("gcd is not 1, so the complement is infinite")]
    InfiniteComplement,
    #[error("{value} is not a nonzero member of the monoid")]
    NotAMember { value: String },
    #[error("Apery data is inconsistent: {reason}")]
    InvalidApery { reason: String },
    #[error("dynamic-programming table of {needed} entries exceeds the limit of {limit}")]
    OracleLimit { needed: String, limit: usize },
    #[error("sequence is not telescopic (first failure at index {witness})")]
    NotTelescopic { witness: usize },
    #[error("{value} is not a multiple of the gcd {gcd}")]
    NotMultipleOfGcd { value: String, gcd: String },
    #[error("gcd of the sequence is {gcd}, expected 1")]
    NonUnitGcd { gcd: String },
    #[error("result would have {size} elements, above the cap of {cap}")]
    SizeCapExceeded { size: String, cap: usize },
    #[error("gcd({m}, {g}) != 1")]
    NotCoprime { g: String, m: String },
    #[error("multiplier must be at least 1")]
    ZeroMultiplier,
    #[error("gcds differ: {left} vs {right}")]
    GcdMismatch { left: String, right: String },
    #[error("invalid decomposition: {reason}")]
    InvalidDecomposition { reason: String },
    #[error("step {index} failed: {source}")]
    Step {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("precondition violated: {reason}")]
    PreconditionViolated { reason: String },
    #[error("the two sequences generate different monoids")]
    MonoidMismatch,
    #[error("term {value} of the minimal sequence does not occur in the input")]
    MissingTerm { value: String },
    #[error("gcd condition fails at index {index}")]
    GcdConditionFailed { index: usize },
    #[error("membership condition fails at index {index}")]
    MembershipConditionFailed { index: usize },
    #[error("invalid family parameters: {reason}")]
    InvalidFamilyParameters { reason: String },
    #[error("invalid parameters: {reason}")]
    InvalidParameters { reason: String },
}

impl Error {
    /// Stable variant name, used by the CLI for machine-readable errors.
    ///
    /// A failing program step reports the name of the underlying error.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptySequence => "EmptySequence",
            Error::Parse { .. } => "Parse",
            Error::HeadZero => "HeadZero",
            Error::DegenerateHead => "DegenerateHead",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotDivisible { .. } => "NotDivisible",
            Error::ZeroScale => "ZeroScale",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::InfiniteComplement => "InfiniteComplement",
            Error::NotAMember { .. } => "NotAMember",
            Error::InvalidApery { .. } => "InvalidApery",
            Error::OracleLimit { .. } => "OracleLimit",
            Error::NotTelescopic { .. } => "NotTelescopic",
            Error::NotMultipleOfGcd { .. } => "NotMultipleOfGcd",
            Error::NonUnitGcd { .. } => "NonUnitGcd",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::ZeroMultiplier => "ZeroMultiplier",
            Error::GcdMismatch { .. } => "GcdMismatch",
            Error::InvalidDecomposition { .. } => "InvalidDecomposition",
            Error::Step { source, .. } => source.name(),
            Error::PreconditionViolated { .. } => "PreconditionViolated",
            Error::MonoidMismatch => "MonoidMismatch",
            Error::MissingTerm { .. } => "MissingTerm",
            Error::GcdConditionFailed { .. } => "GcdConditionFailed",
            Error::MembershipConditionFailed { .. } => "MembershipConditionFailed",
            Error::InvalidFamilyParameters { .. } => "InvalidFamilyParameters",
            Error::InvalidParameters { .. } => "InvalidParameters",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
