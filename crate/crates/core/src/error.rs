use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("ground set of size {n} exceeds the limit {limit} for {what}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("element {index} is outside the ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("subset is over a ground set of size {found}, expected {expected}")]
    GroundMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("local search exceeded the move cap of {0}")]
    MoveCap(usize),
    #[error("LP solve did not converge: certified bounds [{lower}, {upper}]")]
    NonConvergence { lower: f64, upper: f64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
