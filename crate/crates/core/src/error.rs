use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("trivial character (l = 0) requires the explicit trivial-character flag")]
    TrivialCharacter,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("weight {0:?} is not in the spherical lattice")]
    NotInLattice(Vec<i64>),

    #[error("weights {0:?} and {1:?} are not neighbours")]
    NotNeighbors(Vec<i64>, Vec<i64>),

    #[error("no lattice path from the base weight to {0:?}")]
    NoPath(Vec<i64>),

    #[error("index j = {j} out of range 1..={p}")]
    IndexOutOfRange { j: usize, p: usize },

    #[error("orthonormalization degenerated (condition estimate {condition:e})")]
    SingularBlock { condition: f64 },

    #[error("Cos kernel singular: det X = 0 with Re(lambda - rho) <= 0")]
    KernelSingular,

    #[error("matrix is not block diagonal in L (off-diagonal size {deviation:e})")]
    NotInL { deviation: f64 },

    #[error("outside oracle domain: {0}")]
    DomainError(String),

    #[error("excessive rejection: {rejected} of {samples} samples")]
    ExcessiveRejection { rejected: u64, samples: u64 },

    #[error("callback is not a section: f(km) differs from chi(m)^-1 f(k) by {deviation:e}")]
    NotASection { deviation: f64 },

    #[error("phase convention mismatch: integrand changed by {residual:e} under v -> v e^(i theta)")]
    ConventionMismatch { residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
