use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at token `{token}`: {reason}")]
    Syntax { token: String, reason: String },

    #[error("generator `{generator}` is out of range for g={g}, b={b}")]
    Range {
        generator: String,
        g: usize,
        b: usize,
    },

    #[error("invalid surface parameters: {0}")]
    Params(String),

    #[error("parity error: p-projection has odd length {0}")]
    Parity(usize),

    #[error("word `{0}` is not in the kernel subgroup")]
    NotInGamma(String),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("inconsistent coset table: {0}")]
    InconsistentTable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
