use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("partition {partition} does not fit in the {n}x{n} square")]
    NotInSquare { partition: String, n: usize },
    #[error("invalid index set for n = {n}: {reason}")]
    InvalidIndexSet { n: usize, reason: String },
    #[error("n must be at least {min}, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("{what} is limited to n <= {max}, got {n}")]
    SizeLimit { what: &'static str, n: usize, max: usize },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("expected exactly one perfect orientation, found {0}")]
    OrientationCount(usize),
    #[error("no single flow monomial attains the coordinatewise minimum for J = {0}")]
    NoMinimalMonomial(String),
    #[error("valuation mismatch for {partition}: flows give {flows:?}, maxdiag gives {maxdiag:?}")]
    ValuationMismatch { partition: String, flows: Vec<i64>, maxdiag: Vec<i64> },
    #[error("a face outside the coordinate system ({0}) lies left of a flow")]
    UnexpectedFace(String),
    #[error("tropicalization and chain-polytope routes disagree for n = {0}")]
    GammaMismatch(usize),
    #[error("{0:?} is not an antichain")]
    NotAntichain(Vec<(usize, usize)>),
    #[error("complement of {0} has a principal hook with arm <= leg")]
    HookNotDominant(String),
    #[error("folding is ill-defined at row orbit {row}, column orbit {col}")]
    FoldIllDefined { row: usize, col: usize },
    #[error("polytope: {0}")]
    Polytope(#[from] PolytopeError),
}

/// Errors from the exact polytope engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("empty input")]
    Empty,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points span an affine subspace of dimension {affine_dim} inside R^{ambient}")]
    LowerDimensional { affine_dim: usize, ambient: usize },
    #[error("inequality system does not define a bounded full-dimensional polytope")]
    Unbounded,
    #[error("inequality system is infeasible or not full-dimensional")]
    Degenerate,
    #[error("dimension {dim} exceeds the supported limit {max}")]
    DimensionLimit { dim: usize, max: usize },
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
