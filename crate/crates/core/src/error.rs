use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is empty")]
    EmptyMatrix,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("non-finite distance at ({i}, {j})")]
    NonFiniteDistance { i: usize, j: usize },
    #[error("nonzero diagonal entry at ({i}, {i}): {value}")]
    NonzeroDiagonal { i: usize, value: f64 },
    #[error("negative distance at ({i}, {j}): {value}")]
    NegativeDistance { i: usize, j: usize, value: f64 },
    #[error("distinct points {i} and {j} are at distance zero")]
    CoincidentPoints { i: usize, j: usize },
    #[error("asymmetric matrix: d({i}, {j}) = {dij} but d({j}, {i}) = {dji}")]
    AsymmetricMatrix { i: usize, j: usize, dij: f64, dji: f64 },
    #[error("triangle inequality fails: d({i}, {k}) = {dik} > d({i}, {j}) + d({j}, {k}) = {sum}")]
    TriangleViolation {
        i: usize,
        j: usize,
        k: usize,
        dik: f64,
        sum: f64,
    },
    #[error("operation needs at least two points")]
    SinglePointSpace,
    #[error("scale factor must be positive, got {0}")]
    NonpositiveScale(f64),
    #[error("dual constant {d} is smaller than twice the diameter {two_diam}")]
    DTooSmall { d: f64, two_diam: f64 },
    #[error("point set is empty")]
    EmptySet,
    #[error("point index {index} out of range for a space of {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("block count {k} out of range for {n} points")]
    KOutOfRange { n: usize, k: usize },
    #[error("partition does not cover exactly the points 0..{n}")]
    PartitionMismatch { n: usize },
    #[error("relation is not a correspondence: {0}")]
    NotSurjective(String),
    #[error("brute force needs {cells} cells, limit is {limit}")]
    TooLarge { cells: usize, limit: usize },
    #[error("partition has {blocks} blocks but the simplex has {m} points")]
    BlockCountMismatch { blocks: usize, m: usize },
    #[error("simplex needs at least one point")]
    EmptySimplex,
    #[error("simplex edge length must be positive, got {0}")]
    NonpositiveLambda(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("lambda {lambda} is below the required bound {bound}")]
    LambdaTooSmall { lambda: f64, bound: f64 },
    #[error("lambda {lambda} exceeds the allowed bound {bound}")]
    LambdaTooLarge { lambda: f64, bound: f64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("simplex size {m} out of range for {n} points")]
    MOutOfRange { m: usize, n: usize },
    #[error("profile domain end must be positive, got {0}")]
    NonpositiveDomain(f64),
    #[error("distances must satisfy a<b<c<d<f<e")]
    OrderingViolated,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors raised while reading a matrix file rather than
    /// validating its contents.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::EmptyMatrix | Error::NotSquare { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
