use thiserror::Error;

/// Errors produced by shape construction, distance evaluation, network
/// handling, and the simulations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("zero-length edge starting at vertex {0}")]
    ZeroLengthEdge(usize),

    #[error("polygon is not simple: edge at vertex {first} meets edge at vertex {second}")]
    SelfIntersection { first: usize, second: usize },

    #[error("polygon folds back on itself at vertex {0}")]
    Foldback(usize),

    #[error("polygon must be counterclockwise (signed area {0})")]
    NotCounterclockwise(f64),

    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),

    #[error("vertex index {index} out of range for polygon with {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },

    #[error("exponent p = {0} is unsupported (p must be at least 1)")]
    UnsupportedExponent(f64),

    #[error("regular polygon needs at least 2 sides, got {0}")]
    TooFewSides(u64),

    #[error("spiral needs at least 2 windings, got {0}")]
    SpiralWindings(u32),

    #[error("invalid polygon trace: {0}")]
    InvalidTrace(String),

    #[error("distance between these turning functions is not supported: {0}")]
    UnsupportedPair(&'static str),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("face {face} is invalid: {source}")]
    InvalidFace { face: usize, source: Box<Error> },

    #[error("unknown lattice '{0}' (supported: hex, 4.8.8, 3.12.12, 4.6.12)")]
    UnknownLattice(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("linear solve failed: {0}")]
    Solver(String),

    #[error("{0}")]
    Io(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by bad input rather than an internal failure.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Solver(_) | Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
