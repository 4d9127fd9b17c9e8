use thiserror::Error;

/// Structural failures: malformed tables, mismatched shapes, violated
/// preconditions. Law violations (a category failing associativity, a Reedy
/// axiom failing) are not errors; validators report those as witnesses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed category table: {0}")]
    MalformedCategory(String),

    #[error("malformed functor: {0}")]
    MalformedFunctor(String),

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("malformed crossed group: {0}")]
    MalformedCrossed(String),

    #[error("malformed reedy structure: {0}")]
    MalformedReedy(String),

    #[error("incoherent grothendieck data: {0}")]
    IncoherentGrothendieck(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("inadequate truncation: need max degree >= {required}, have {available}")]
    InadequateTruncation { required: u32, available: u32 },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
