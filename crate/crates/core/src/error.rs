use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("conductor {from} does not divide {to}")]
    ConductorMismatch { from: u64, to: u64 },

    #[error("generator index {index} out of range ({count} generators)")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid permutation action: {0}")]
    InvalidAction(String),

    #[error("grading does not vanish on relator {relator}")]
    InvalidGrading { relator: usize },

    #[error("grading is not surjective onto Z (gcd of images is {gcd})")]
    GradingNotSurjective { gcd: i64 },

    #[error("invalid representation: {0}")]
    InvalidRep(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("boundary composite d{lower}*d{upper} is nonzero")]
    BoundaryNotZero { lower: usize, upper: usize },

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalog(String),

    #[error("invalid catalog parameters: {0}")]
    InvalidParameters(String),

    #[error("image group exceeds {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("free rank {rank} in degree {degree}: no character along this grading is acyclic")]
    FreeRankObstruction { degree: usize, rank: usize },

    #[error("not a rational homology sphere: trivial dims {0:?}")]
    NotRationalHomologySphere(Vec<usize>),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
