use thiserror::Error;

use crate::face::Face;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex label 0 is not allowed")]
    ZeroLabel,
    #[error("label {label} exceeds the supported bound ±{bound}")]
    LabelOutOfRange { label: i32, bound: u32 },
    #[error("vertex {0} repeated in a face")]
    RepeatedVertex(i32),
    #[error("apex {0} must be positive")]
    NegativeLabel(i32),
    #[error("vertex sets of the two complexes overlap")]
    OverlappingVertexSets,
    #[error("face {0} is not in the complex")]
    FaceNotPresent(Face),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: i32, found: i32 },
    #[error("complex is not pure")]
    NotPure,
    #[error("ridge {0} lies in more than two facets")]
    RidgeInThreeFacets(Face),
    #[error("complex has empty boundary")]
    ClosedComplex,
    #[error("ball and its antipode share facet {0}")]
    SharedFacets(Face),
    #[error("n = {n} is below the minimum {min}")]
    NTooSmall { n: u32, min: u32 },
    #[error("face {0} has odd cardinality")]
    OddCardinality(Face),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("ball is not a full-dimensional subcomplex: {0}")]
    NotSubcomplex(String),
    #[error("flip face {0} is missing")]
    FlipFaceMissing(Face),
    #[error("flip would add existing face {0}")]
    FlipFacePresent(Face),
    #[error("link of {0} is not the boundary of the complementary simplex")]
    LinkMismatch(Face),
    #[error("index set {0:?} is outside the admissible range")]
    IndexOutOfRange(Vec<u32>),
    #[error("index set is invalid: {0}")]
    InvalidIndexSet(String),
    #[error("sequence is not a permutation of the facets")]
    NotPermutation,
    #[error("search budget of {0} nodes exhausted")]
    SearchBudgetExceeded(u64),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
