use thiserror::Error;

/// Errors raised while building or querying graphs and their ideal data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("undeclared vertex `{name}` at {line}:{col}")]
    UndeclaredVertex { name: String, line: usize, col: usize },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("invalid vertex name `{0}`")]
    InvalidVertexName(String),
    #[error("zero multiplicity for edge {src} -> {dst}")]
    ZeroMultiplicity { src: String, dst: String },
    #[error("multiplicity of edge {src} -> {dst} exceeds 2^63-1")]
    MultiplicityOverflow { src: String, dst: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex set is not hereditary and saturated")]
    NotHereditarySaturated,
    #[error("vertex set is not a maximal tail")]
    NotMaximalTail,
    #[error("maximal tail carries no exit-free loop")]
    NotTauTail,
    #[error("vertex `{0}` lies on the distinguished loop")]
    VertexOnLoop(String),
    #[error("inadmissible ideal: {0}")]
    InadmissibleIdeal(String),
    #[error("empty family")]
    EmptyFamily,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("quotient vertex name `{0}` collides with an existing vertex")]
    NameCollision(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid circle expression `{0}`")]
    CircleSyntax(String),
    #[error("invalid primitive subset: {0}")]
    InvalidSubset(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
