use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("relation contains a cycle through element {0}")]
    CycleDetected(usize),

    #[error("label {label} out of range for a poset on {n} elements")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("{what} exceeds cap {limit} (got {got}); raise it with {flag}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
        flag: &'static str,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A computed quantity contradicts a theorem the code relies on
    /// (for example a negative Stanley defect). Always a bug.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),

    #[error("no m in [1, {b}] satisfies the quotient-sum bounds at slack {slack}")]
    NotFound { b: u64, slack: f64 },

    #[error("target ratio {0} lies outside (1, n]")]
    DegenerateRatio(String),

    #[error("points span an affine space of dimension {actual}, expected {claimed}")]
    DegenerateInput { claimed: usize, actual: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("interpolation system is singular or inconsistent")]
    SingularInterpolation,

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolated(msg.into())
    }
}
