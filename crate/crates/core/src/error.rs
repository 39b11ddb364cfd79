use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {0} is not part of the graph")]
    UnknownVertex(u32),

    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),

    #[error("graph has no edges")]
    Edgeless,

    #[error("graph is not connected")]
    Disconnected,

    #[error("operation is undefined on the void complex")]
    VoidComplex,

    #[error("vertex set is not a face of the complex")]
    NotAFace,

    #[error("complex is not pure")]
    NotPure,

    #[error("dimension {dim} out of range -1..={max}")]
    DimensionOutOfRange { dim: i32, max: i32 },

    #[error("{what} exceeds capacity limit {limit}")]
    Capacity { what: &'static str, limit: usize },

    #[error("{0} is not a prime (use 0 for the rationals)")]
    NotPrime(u64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
