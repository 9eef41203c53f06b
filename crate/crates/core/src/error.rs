use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no direction")]
    ZeroVector,

    #[error("rays {0:?} and {1:?} are parallel")]
    ParallelRays((i64, i64), (i64, i64)),

    #[error("matrix {0:?} is not an involution")]
    NotAnInvolution([[i64; 2]; 2]),

    #[error("fan needs at least {needed} rays, got {got}")]
    TooFewRays { needed: usize, got: usize },

    #[error("duplicate ray {0:?}")]
    DuplicateRay((i64, i64)),

    #[error("fan is not complete")]
    NotComplete,

    #[error("fan is not smooth")]
    NotSmooth,

    #[error("fan is not invariant under the involution")]
    NotInvariant,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("bad reduction at p = {0}; use densities module")]
    BadReduction(u64),

    #[error("polytope unbounded")]
    Unbounded,

    #[error("all-zero tuple is not a projective point")]
    ZeroTuple,

    #[error("{0:?} does not lie on the surface")]
    NotOnSurface([i128; 4]),

    #[error("height bound must be positive, got {0}")]
    NonPositiveBound(i128),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
