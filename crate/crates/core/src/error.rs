use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variants fall into three families which the CLI maps onto exit codes:
/// malformed or invalid input, violated mathematical hypotheses, and failed
/// internal certifications (which indicate a bug rather than bad input).
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field order {0} exceeds the supported bound")]
    FieldTooLarge(u64),
    #[error("invalid field description: {0}")]
    InvalidField(String),
    #[error("minimal polynomial is reducible over GF({0})")]
    ReducibleMinPoly(u64),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,

    #[error("permutation generator {0} is not a bijection")]
    NotBijection(usize),
    #[error("group closure exceeds {0} elements")]
    ClosureTooLarge(usize),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("action matrix for generator {gen} is not an automorphism: {reason}")]
    NotAutomorphism { gen: usize, reason: String },
    #[error("action is not a homomorphism: {0}")]
    ActionNotHomomorphism(String),
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("representations live on different groups")]
    GroupMismatch,

    #[error("relation violated at element {0}")]
    RelationViolation(String),
    #[error("generator image {0} is singular")]
    SingularImage(usize),
    #[error("zero module")]
    ZeroModule,

    #[error("characteristic {p} divides group order {order}")]
    CharacteristicDivides { p: u64, order: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("certification failure: {0}")]
    Certification(String),

    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown representation {0:?}")]
    UnknownRep(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for this error: 2 for input validation, 3 for a
    /// violated hypothesis, 4 for an internal certification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CharacteristicDivides { .. } | Error::Hypothesis(_) | Error::ZeroModule => 3,
            Error::Certification(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
