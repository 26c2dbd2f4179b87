use thiserror::Error;

/// Errors surfaced by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("gram matrix is not positive definite (leading minor {index} is {minor})")]
    NotPositiveDefinite { index: usize, minor: String },
    #[error("gram matrix has odd diagonal entry at {index}; lattice is not even")]
    OddDiagonal { index: usize },
    #[error("enumeration node budget {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("generators do not span a finite-index sublattice (rank {rank} < {dim})")]
    NotFiniteIndex { rank: usize, dim: usize },
    #[error("not an isometry: (U^T G U - G)[{row}][{col}] = {value}")]
    NotIsometry {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("order exceeds bound {0}")]
    OrderExceedsBound(u64),
    #[error("not a fourvolution")]
    NotFourvolution,
    #[error("code is not doubly even")]
    NotDoublyEven,
    #[error("code dimension {0} too large for brute force")]
    DimensionTooLarge(usize),
    #[error("generator rows are linearly dependent over GF(2)")]
    DependentGenerators,
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("involution t_M is not integral on the lattice")]
    InvolutionNotIntegral,
    #[error("M + N does not equal the lattice (index {0})")]
    SumNotLattice(String),
    #[error("root system of the coset is not A1^n: {0}")]
    NotA1Frame(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("index {0} is not a perfect square")]
    NotPerfectSquare(String),
    #[error("non-integral or negative eigenspace dimension {0}")]
    BadEigenspaceDimension(String),
    #[error("brute-force budget exceeded: {0}")]
    SearchBudget(String),
    #[error("unsupported product: {0}")]
    UnsupportedProduct(String),
    #[error("vector outside the sigma domain: {0}")]
    OutsideSigmaDomain(String),
    #[error("no lift fixes the witness element")]
    NoLift,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("fixture checksum mismatch for {name}: expected {expected}, found {found}")]
    Checksum {
        name: String,
        expected: String,
        found: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

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
