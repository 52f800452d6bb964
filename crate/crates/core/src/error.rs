//! Error surface shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed argument (zero denominator, zero Kummer parameter, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Input tables do not describe a genuine module (negative dimension
    /// surfaced while evaluating a formula that must stay nonnegative).
    #[error("inconsistent data: {0}")]
    InconsistentData(String),

    /// An invariant was requested while its validity flag is off.
    #[error("unavailable invariant: {0}")]
    UnavailableInvariant(String),

    /// Middle convolution collapsed the module to rank zero.
    #[error("degenerate convolution: {0}")]
    DegenerateConvolution(String),

    /// A reduction chain could not make progress.
    #[error("stuck chain: {0}")]
    StuckChain(String),

    /// Katz reduction was asked for on data with rigidity index != 2.
    #[error("not rigid: {0}")]
    NotRigid(String),

    /// Precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Document parsing failed (syntax or schema).
    #[error("parse error: {0}")]
    Parse(String),

    /// An eigenvalue fell outside the working cyclotomic field.
    #[error("unsupported eigenvalue: {0}")]
    UnsupportedEigenvalue(String),

    /// Division by zero in exact field arithmetic.
    #[error("division by zero")]
    DivisionByZero,

    /// Oracle comparison reported mismatches.
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
