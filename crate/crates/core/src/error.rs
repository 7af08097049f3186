use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Grassmannian Gr({k},{n}): need 1 <= k < n")]
    InvalidContext { k: usize, n: usize },

    #[error("partition {partition} does not fit in the {rows}x{cols} rectangle")]
    OutsideRectangle {
        partition: String,
        rows: usize,
        cols: usize,
    },

    #[error("not weakly decreasing at position {position}")]
    NotDecreasing { position: usize },

    #[error("cannot parse partition {text:?}: {reason}")]
    ParsePartition { text: String, reason: String },

    #[error("cannot parse polynomial {text:?}: {reason}")]
    ParsePoly { text: String, reason: String },

    #[error("01-string {bits:?} is not of type ({zeros},{ones})")]
    BitString {
        bits: String,
        zeros: usize,
        ones: usize,
    },

    #[error("variable {var} is not allowed in the {ring} ring")]
    RingDiscipline { ring: String, var: String },

    #[error("expected a {expected} expression, got {found}")]
    WrongRing { expected: String, found: String },

    #[error("expressions live over different Grassmannians: {left} vs {right}")]
    ContextMismatch { left: String, right: String },

    #[error("strip size {r} out of range 1..={max}")]
    StripOutOfRange { r: usize, max: usize },

    #[error("{0}")]
    OutOfRange(String),

    #[error("degree mismatch: |lambda|+|mu| = {total} is not |nu| + d*{n} for any d >= 0 (|nu| = {target})")]
    DegreeMismatch {
        total: usize,
        target: usize,
        n: usize,
    },

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
