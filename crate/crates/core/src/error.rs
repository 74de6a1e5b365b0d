use thiserror::Error;

use crate::model::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid number `{0}`")]
    Number(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid decision matrix: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown alternative `{0}`")]
    UnknownAlternative(String),
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("criterion `{0}` has zero diapason; mixed-radix weights collapse")]
    ZeroDiapason(String),
    #[error("criterion `{0}` yields a zero weight")]
    ZeroWeight(String),
    #[error("criterion `{0}` has a non-positive maximum; cannot normalize")]
    NonPositiveMaximum(String),
    #[error("normalization constant must be positive")]
    NonPositiveScale,
    #[error("no relations given")]
    NoRelations,
    #[error("not a total preorder: {0}")]
    Order(crate::crisp::OrderDefect),
    #[error("transform: {0}")]
    Transform(String),
    #[error("membership {value} at ({row}, {col}) of relation {relation} is outside [0, 1]")]
    Membership {
        relation: usize,
        row: usize,
        col: usize,
        value: String,
    },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
