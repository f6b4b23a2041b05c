use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// An operation that requires a nonzero argument received zero.
    #[error("{0}: argument must be nonzero")]
    ZeroArgument(&'static str),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("no products given")]
    EmptySpec,

    /// A multiplicand vanishes or has a pole at an index the product runs over.
    #[error(
        "product `{name}`: multiplicand has a zero or pole at k = {root} (lower bound {lower})"
    )]
    InvalidProduct { name: String, root: i64, lower: i64 },

    #[error("product `{0}`: multiplicand is zero")]
    ZeroMultiplicand(String),

    #[error("product `{name}`: lower bound {lower} is negative")]
    NegativeLowerBound { name: String, lower: i64 },

    #[error("duplicate product name `{0}`")]
    DuplicateName(String),

    #[error("evaluation failed at n = {n}: {reason}")]
    Evaluation { n: i64, reason: String },

    #[error("exponent does not fit into a machine integer")]
    Overflow,

    #[error("n_max = {n_max} is below the first admissible index {start}")]
    RangeTooSmall { n_max: i64, start: i64 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A step whose success is guaranteed by the theory failed; indicates a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
