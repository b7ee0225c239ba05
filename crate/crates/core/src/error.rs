use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed dimer: {0}")]
    Malformed(String),
    #[error("invalid dimer: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not dimer-dual: {0}")]
    NotDimerDual(String),
    #[error("cannot mutate at `{vertex}`: {reason}")]
    Mutation { vertex: String, reason: String },
    #[error("reduction failed: {0}")]
    Reduction(String),
    #[error("polygon error: {0}")]
    Polygon(String),
    #[error("lattice error: {0}")]
    Lattice(String),
    #[error("generator error: {0}")]
    Generator(String),
    #[error("exchange graph error: {0}")]
    Exchange(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("corpus: {0}")]
    Corpus(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
