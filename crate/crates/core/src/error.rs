use thiserror::Error;

/// Errors raised by the polynomial kernel, the elimination pipelines and the
/// numeric solver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable tables do not match: {0}")]
    TableMismatch(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),

    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("main variable mismatch: `{0}` vs `{1}`")]
    MainVarMismatch(String, String),

    #[error("degree {0} is too small (need at least {1})")]
    DegreeTooSmall(usize, usize),

    /// Exact division failed; `remainder` is the first nonzero remainder
    /// term in canonical text form.
    #[error("not divisible, remainder witness: {remainder}")]
    NotDivisible { remainder: String },

    #[error("exponent overflow (max {0} per variable)")]
    ExponentOverflow(u32),

    #[error("too many variables ({0}, max {1})")]
    TooManyVariables(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate edge: {0}")]
    DegenerateEdge(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("pipeline integrity failure: {0}")]
    PipelineIntegrity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
