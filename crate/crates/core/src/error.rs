use thiserror::Error;

/// Errors raised by the algebra, solver, mechanism and audit layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("profile contains no voters")]
    EmptyProfile,

    #[error("dimension mismatch: expected {expected} alternatives, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkewSymmetric { row: usize, col: usize },

    #[error("replication factor must be at least {min}, got {got}")]
    InvalidFactor { min: u64, got: u64 },

    #[error("invalid weak order: {0}")]
    InvalidWeakOrder(String),

    #[error("invalid lottery: {0}")]
    InvalidLottery(String),

    #[error("multiplicity must be positive")]
    ZeroMultiplicity,

    #[error("not a sub-multiset of the profile")]
    NotSubMultiset,

    #[error("profile contains non-ordinal (matrix) voter types")]
    NonOrdinalProfile,

    #[error("duplicate alternative label `{0}`")]
    DuplicateAlternative(String),

    #[error("unknown alternative `{0}`")]
    UnknownAlternative(String),

    #[error("unknown mechanism `{0}`")]
    UnknownMechanism(String),

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("unknown campaign `{0}`")]
    UnknownCampaign(String),

    #[error("unknown domain `{0}`")]
    UnknownDomain(String),

    #[error("invalid search budget: {0}")]
    InvalidBudget(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A semantic error located in a profile file.
    #[error("line {line}, column {column}: {source}")]
    At {
        line: usize,
        column: usize,
        source: Box<Error>,
    },

    /// A witness failed its independent re-check.
    #[error("witness failed re-verification: {0}")]
    UnverifiedWitness(String),

    /// A serialized witness record could not be turned back into a finding.
    #[error("malformed witness record: {0}")]
    InvalidWitness(String),

    /// The simplex reported infeasibility on a program that must be feasible.
    #[error("linear program unexpectedly infeasible")]
    Infeasible,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
