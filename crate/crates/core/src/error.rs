use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("square root needs a positive rational, got {0}")]
    NonPositiveSqrt(String),

    #[error("integer {0} is too large to factor")]
    TooLargeToFactor(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("class functions live on different groups")]
    GroupMismatch,

    #[error("subgroup does not belong to this group")]
    SubgroupMismatch,

    #[error("group of order {order} exceeds the supported bound {limit}")]
    TooLarge { order: usize, limit: usize },

    #[error("element id {0} is not in the group")]
    InvalidElement(usize),

    #[error("sign map has {got} entries, expected {expected}")]
    DeltaMismatch { got: usize, expected: usize },

    #[error("M-set pair does not belong to this group")]
    ForeignPair,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("class {0} is not elliptic")]
    NotElliptic(usize),

    #[error("Fourier image of elliptic basis vector {0} leaves the elliptic span")]
    ClosureViolation(usize),

    #[error("unknown unipotent class label `{0}`")]
    UnknownClass(String),

    #[error("partition total {0} is odd")]
    OddTotal(u64),

    #[error("character table computation failed: {0}")]
    CharacterTable(String),
}
