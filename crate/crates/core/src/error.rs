use thiserror::Error;

use crate::linalg::LinalgError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid structure constants: {0}")]
    StructureConstants(String),
    #[error("multiplication is not associative on basis triple ({i}, {j}, {l})")]
    NonAssociative { i: usize, j: usize, l: usize },
    #[error("unit is not a two-sided identity: {0}")]
    Unit(String),
    #[error("idempotent system rejected: {0}")]
    Idempotents(String),
    #[error("characteristic {characteristic} is too small for the trace-form radical of a {dim}-dimensional algebra")]
    Characteristic { characteristic: u64, dim: usize },
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("not a two-sided ideal: {0}")]
    Ideal(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("invalid ring map: {0}")]
    RingMap(String),
    #[error("invalid module: {0}")]
    Module(String),
    #[error("invalid bimodule: {0}")]
    Bimodule(String),
    #[error("invalid complex: {0}")]
    Complex(String),
    #[error("invalid chain map: {0}")]
    ChainMap(String),
    #[error("projectivity witness rejected: {0}")]
    Witness(String),
    #[error("window: {0}")]
    Window(String),
    #[error("triangle is not exact: {0}")]
    UnverifiedTriangle(String),
    #[error("search budget: {0}")]
    Budget(String),
    #[error("lifting failed at stage {stage}: {reason}")]
    Lift { stage: String, reason: String },
    #[error("fixture: {0}")]
    Fixture(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
