use thiserror::Error;

/// Errors produced by construction, verification and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("q = {0} is not a prime power >= 2")]
    NotPrimePower(u64),

    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("vertex index {index} out of range for a graph of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("degree k = {0} is out of range (need k >= 2)")]
    InvalidDegree(u64),

    #[error("q = {0} is not supported here (need an even prime power >= 4)")]
    UnsupportedQ(u64),

    #[error("empty seed set")]
    EmptySeed,

    #[error("perfect domination fails at vertex {vertex}: {count} neighbours in the set")]
    PerfectionFailure { vertex: String, count: usize },

    #[error("D_Q and D_S share {overlap} vertices at q = {q} (e.g. {example})")]
    SeedOverlap {
        q: u32,
        overlap: usize,
        example: String,
    },

    #[error("the two adjacency formulations disagree at q = {q}: {detail}")]
    FormulationMismatch { q: u32, detail: String },

    #[error("construction error: {0}")]
    Construction(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
