use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("lattice is degenerate")]
    Degenerate,

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("rows are linearly dependent")]
    DependentRows,

    #[error("sublattice does not have finite index")]
    NotFiniteIndex,

    #[error("sublattice is not contained in the reference lattice")]
    NotContained,

    #[error("no isotropic vector found up to sup-norm {bound}")]
    SearchExhausted { bound: u64 },

    #[error("symmetric power has {monomials} monomials, above the cap of {cap}")]
    SizeCapExceeded { monomials: usize, cap: usize },

    #[error("invalid lattice kind `{0}`")]
    UnknownKind(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("no simple root mod {p}")]
    NoRoot { p: u64 },

    /// A computed value contradicts an identity that holds within the model.
    #[error("internal consistency failure: {0}")]
    ModelViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by the caller's input rather than by a bug.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::ModelViolation(_))
    }
}
