use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} appears in more than one identification group")]
    OverlappingGroups(usize),

    #[error("identifying adjacent vertices {0} and {1} would create a self-loop")]
    IdentifiesAdjacent(usize, usize),

    #[error("colouring covers {got} vertices but the graph has {expected}")]
    ColouringSize { expected: usize, got: usize },

    #[error("colour {colour} at vertex {vertex} is outside the palette 0..{palette}")]
    ColourOutOfRange {
        vertex: usize,
        colour: usize,
        palette: usize,
    },

    #[error("colouring is not proper: edge {0}-{1} is monochromatic")]
    Improper(usize, usize),

    #[error("colouring is not acyclic")]
    NotAcyclic,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration overflow: more than {cap} {what}")]
    Overflow { what: &'static str, cap: usize },

    #[error("refused: {0}")]
    Refused(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
