use thiserror::Error;

/// Errors raised by the algebra, protocol and attack layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("exponent {exponent} at word position {position} is outside [0, {bound})")]
    ExponentOutOfRange {
        position: usize,
        exponent: u64,
        bound: u64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("layer {layer} of the generator-image table is singular")]
    SingularLayer { layer: usize },

    #[error("generator-image table is invalid: {0}")]
    InvalidTable(String),

    #[error("parameters too small: {0}")]
    ParamsTooSmall(String),

    #[error("message of {len} bytes exceeds capacity of {capacity} bytes")]
    MessageTooLong { len: usize, capacity: usize },

    #[error("matrix does not hold a well-formed encoded message")]
    MalformedMessage,

    #[error("malformed ciphertext: {0}")]
    MalformedCiphertext(String),

    #[error("target is not in the subgroup generated by the base")]
    NoSolution,

    #[error("attack failed: {0}")]
    AttackFailed(String),

    #[error("every superdiagonal entry of the conjugator is zero")]
    AllSuperdiagonalZero,

    #[error("every central offset is zero; the exponent is undetermined")]
    AllCentralOffsetsZero,

    #[error("malformed file: {0}")]
    MalformedFile(String),

    #[error("unsupported file version {0}")]
    VersionUnsupported(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
