use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("weight p must be at least 2, got {0}")]
    InvalidWeight(i64),
    #[error("p = {p} exceeds the configured cap {cap}")]
    CapExceeded { p: i64, cap: i64 },
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("unknown twist class {0:?} (expected e, g12, g13 or g23)")]
    InvalidTwist(String),
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),
    #[error("invalid tilting form: {0}")]
    InvalidForm(String),
    #[error("not rigid: {a} and {b} ({reason})")]
    NotRigid { a: String, b: String, reason: String },
    #[error("{0} is not in the cluster tilting subcategory")]
    NotInSubcategory(String),
    #[error("nonzero Homs between the summands form a cycle")]
    NotDirected,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
