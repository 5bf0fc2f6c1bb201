use thiserror::Error;

/// Errors raised by the exact engine and the verification harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("no admissible parameter point after {0} attempts")]
    SamplingExhausted(usize),
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("coefficient index {index} beyond series order {order}")]
    BeyondOrder { index: usize, order: usize },
    #[error("series is not terminating at order {0}")]
    NotTerminating(usize),
    #[error("interpolation nodes are not pairwise distinct")]
    DuplicateNodes,
    #[error("interpolation points collide")]
    InterpolationDegenerate,
    #[error("lattice nodes collide")]
    DegenerateLattice,
    #[error("index error: {0}")]
    Index(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("order {order} exceeds the limit {max} of this engine")]
    OrderTooLarge { order: usize, max: usize },
    #[error("Pfaffian needs even order, got {0}")]
    OddOrder(usize),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that mean the sampled point sits on a pole of the
    /// expression being evaluated, so a fresh point should be drawn.
    pub fn is_pole(&self) -> bool {
        matches!(
            self,
            Error::Pole(_)
                | Error::DivisionByZero
                | Error::DegenerateLattice
                | Error::DuplicateNodes
                | Error::InterpolationDegenerate
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
